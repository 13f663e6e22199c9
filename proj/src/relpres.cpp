#include "vankamp/relpres.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace vk {

HatNorms norms(const HatWord& w) {
  HatNorms n;
  n.length = static_cast<long long>(w.size());
  for (const HatLetter& l : w.letters) {
    long long c = l.complexity();
    n.norm1 += c;
    n.norminf = std::max(n.norminf, c);
  }
  return n;
}

RelativePresentation RelativePresentation::build_exact(
    const FinitePresentation& p, const std::vector<std::vector<Sym>>& subsets, OraclePtr oracle,
    int radius_cap, size_t ball_size_cap) {
  p.validate();
  if (!p.is_triangular()) throw ParseError("relative presentation base must be triangular");
  if (!(p.alphabet == oracle->alphabet()))
    throw AlphabetMismatch("oracle alphabet differs from presentation alphabet");
  RelativePresentation x;
  x.base_ = p;
  x.oracle_ = std::move(oracle);
  for (const auto& subset : subsets) {
    if (subset.empty()) throw ParseError("empty parabolic generating set");
    x.parabolics_.emplace_back(x.oracle_, subset, radius_cap, ball_size_cap);
  }
  return x;
}

HatLetter RelativePresentation::make_pletter(int i, const Word& over_si, int cap) const {
  const SubgroupContext& h = parabolic(i);
  auto geo = h.canonical_geodesic(over_si, cap);
  if (!geo) throw Overflow("parabolic letter exceeds geodesic cap", cap);
  if (geo->empty())
    throw ParseError("identity element of a parabolic subgroup is not a letter");
  return HatLetter::p_letter(i, std::move(*geo));
}

HatLetter RelativePresentation::letter_inverse(const HatLetter& l, int cap) const {
  if (l.kind == HatLetter::SLetter) return HatLetter::s_letter(alphabet().inverse(l.sym));
  HatLetter inv = make_pletter(l.parabolic, word_inverse(alphabet(), l.geodesic), cap);
  if (inv.geodesic.size() != l.geodesic.size())
    throw InternalInvariantError("inverse parabolic letter changed geodesic length");
  return inv;
}

HatWord RelativePresentation::hat_inverse(const HatWord& w, int cap) const {
  HatWord out;
  out.letters.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out.letters.push_back(letter_inverse(*it, cap));
  return out;
}

Word RelativePresentation::expand(const HatWord& w) const {
  Word out;
  for (const HatLetter& l : w.letters) {
    if (l.kind == HatLetter::SLetter) {
      out.syms.push_back(l.sym);
    } else {
      if (l.parabolic < 0 || l.parabolic >= parabolic_count())
        throw ParseError("parabolic index out of range");
      out.syms.insert(out.syms.end(), l.geodesic.syms.begin(), l.geodesic.syms.end());
    }
  }
  check_in_alphabet(alphabet(), out);
  return out;
}

RelatorClass RelativePresentation::classify_relator(const HatWord& w) const {
  if (w.size() < 2 || w.size() > 3) return {};

  bool all_s = std::all_of(w.letters.begin(), w.letters.end(),
                           [](const HatLetter& l) { return l.kind == HatLetter::SLetter; });
  if (all_s) {
    Word cand;
    for (const HatLetter& l : w.letters) cand.syms.push_back(l.sym);
    Word cmin = min_rotation(cand);
    Word imin = min_rotation(word_inverse(alphabet(), cand));
    for (const Word& r : base_.relators)
      if (r.size() == cand.size() && (min_rotation(r) == cmin || min_rotation(r) == imin))
        return {RelatorKind::RPrimeBase, -1};
    return {};
  }

  if (w.size() == 2) {
    // Pairing bigon: one single-symbol parabolic letter against the inverse
    // S-letter of a symbol of that parabolic's generating set.
    const HatLetter* pl = nullptr;
    const HatLetter* sl = nullptr;
    for (const HatLetter& l : w.letters) (l.kind == HatLetter::PLetter ? pl : sl) = &l;
    if (pl && sl && pl->geodesic.size() == 1) {
      const auto& syms = parabolic(pl->parabolic).sub_syms();
      if (std::binary_search(syms.begin(), syms.end(), sl->sym) && hat_trivial(w))
        return {RelatorKind::RPrimePairing, pl->parabolic};
    }
  }

  int idx = w.letters.front().parabolic;
  bool all_p = std::all_of(w.letters.begin(), w.letters.end(), [idx](const HatLetter& l) {
    return l.kind == HatLetter::PLetter && l.parabolic == idx;
  });
  if (all_p && hat_trivial(w)) return {RelatorKind::Parabolic, idx};
  return {};
}

std::string hat_letter_to_string(const RelativePresentation& x, const HatLetter& l) {
  if (l.kind == HatLetter::SLetter) return x.alphabet().name(l.sym);
  std::string out = "par" + std::to_string(l.parabolic + 1) + ":";
  for (size_t i = 0; i < l.geodesic.size(); ++i) {
    if (i) out += '.';
    out += x.alphabet().name(l.geodesic.syms[i]);
  }
  return out;
}

std::string hat_word_to_string(const RelativePresentation& x, const HatWord& w) {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += hat_letter_to_string(x, w.letters[i]);
  }
  return out;
}

HatWord parse_hat_word(const RelativePresentation& x, const std::string& text, int cap) {
  HatWord w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok.rfind("par", 0) == 0) {
      size_t colon = tok.find(':');
      if (colon != std::string::npos) {
        std::string idx = tok.substr(3, colon - 3);
        bool numeric = !idx.empty() && std::all_of(idx.begin(), idx.end(), [](unsigned char c) {
          return std::isdigit(c);
        });
        if (numeric) {
          int i = std::stoi(idx) - 1;
          if (i < 0 || i >= x.parabolic_count())
            throw ParseError("parabolic index out of range in token: " + tok);
          std::vector<Sym> syms;
          std::string body = tok.substr(colon + 1);
          if (body.empty()) throw ParseError("empty parabolic letter in token: " + tok);
          size_t pos = 0;
          while (pos <= body.size()) {
            size_t dot = body.find('.', pos);
            std::string piece =
                dot == std::string::npos ? body.substr(pos) : body.substr(pos, dot - pos);
            if (piece.empty()) throw ParseError("empty symbol in token: " + tok);
            append_symbol_token(x.alphabet(), piece, syms);
            if (dot == std::string::npos) break;
            pos = dot + 1;
          }
          w.letters.push_back(x.make_pletter(i, Word(std::move(syms)), cap));
          continue;
        }
      }
    }
    std::vector<Sym> syms;
    append_symbol_token(x.alphabet(), tok, syms);
    for (Sym s : syms) w.letters.push_back(HatLetter::s_letter(s));
  }
  return w;
}

}  // namespace vk
