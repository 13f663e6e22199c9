#include "vankamp/core.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace vk {

Alphabet Alphabet::from_generators(const std::vector<std::string>& generators,
                                   const std::vector<std::string>& self_inverse) {
  Alphabet a;
  std::set<std::string> self(self_inverse.begin(), self_inverse.end());
  for (const auto& g : generators) a.add_generator(g, self.count(g) > 0);
  return a;
}

std::optional<Sym> Alphabet::find(std::string_view name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<Sym>(i);
  return std::nullopt;
}

Sym Alphabet::add_generator(const std::string& name, bool self_inverse) {
  if (find(name)) throw ParseError("duplicate generator name: " + name);
  Sym g = static_cast<Sym>(names_.size());
  names_.push_back(name);
  if (self_inverse) {
    inv_.push_back(g);
  } else {
    names_.push_back(name + "^-1");
    inv_.push_back(g + 1);
    inv_.push_back(g);
  }
  return g;
}

Word Word::concat(const Word& o) const {
  Word r = *this;
  r.syms.insert(r.syms.end(), o.syms.begin(), o.syms.end());
  return r;
}

void check_in_alphabet(const Alphabet& a, const Word& w) {
  for (Sym s : w.syms)
    if (!a.is_generator(s))
      throw AlphabetMismatch("symbol index " + std::to_string(s) +
                             " outside alphabet of size " + std::to_string(a.size()));
}

Word free_reduce(const Alphabet& a, const Word& w) {
  check_in_alphabet(a, w);
  std::vector<Sym> stack;
  for (Sym s : w.syms) {
    if (!stack.empty() && a.inverse(stack.back()) == s)
      stack.pop_back();
    else
      stack.push_back(s);
  }
  return Word(std::move(stack));
}

Word word_inverse(const Alphabet& a, const Word& w) {
  check_in_alphabet(a, w);
  Word r;
  r.syms.reserve(w.size());
  for (auto it = w.syms.rbegin(); it != w.syms.rend(); ++it) r.syms.push_back(a.inverse(*it));
  return r;
}

Word cyclic_reduce(const Alphabet& a, const Word& w) {
  Word r = free_reduce(a, w);
  while (r.size() >= 2 && a.inverse(r.syms.front()) == r.syms.back()) {
    r.syms.erase(r.syms.begin());
    r.syms.pop_back();
  }
  return r;
}

bool is_reduced(const Alphabet& a, const Word& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (a.inverse(w.syms[i]) == w.syms[i + 1]) return false;
  return true;
}

bool shortlex_less(const Word& u, const Word& v) {
  if (u.size() != v.size()) return u.size() < v.size();
  return u.syms < v.syms;
}

Word min_rotation(const Word& w) {
  if (w.empty()) return w;
  Word best = w;
  Word cur = w;
  for (size_t i = 1; i < w.size(); ++i) {
    std::rotate(cur.syms.begin(), cur.syms.begin() + 1, cur.syms.end());
    if (cur.syms < best.syms) best = cur;
  }
  return best;
}

std::string word_to_string(const Alphabet& a, const Word& w) {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += a.name(w.syms[i]);
  }
  return out;
}

void append_symbol_token(const Alphabet& a, const std::string& token, std::vector<Sym>& out) {
  std::string name = token;
  long long exp = 1;
  if (auto caret = token.rfind('^'); caret != std::string::npos) {
    name = token.substr(0, caret);
    std::string e = token.substr(caret + 1);
    try {
      size_t used = 0;
      exp = std::stoll(e, &used);
      if (used != e.size()) throw std::invalid_argument(e);
    } catch (const std::exception&) {
      throw ParseError("bad exponent in token: " + token);
    }
  }
  auto s = a.find(name);
  if (!s) throw ParseError("unknown symbol: " + name);
  Sym sym = exp < 0 ? a.inverse(*s) : *s;
  for (long long k = 0; k < std::abs(exp); ++k) out.push_back(sym);
}

bool FinitePresentation::is_triangular() const {
  return std::all_of(relators.begin(), relators.end(),
                     [](const Word& r) { return r.size() == 2 || r.size() == 3; });
}

void FinitePresentation::validate() const {
  for (const Word& r : relators) {
    check_in_alphabet(alphabet, r);
    if (r.empty()) throw ParseError("empty relator");
    if (cyclic_reduce(alphabet, r) != r)
      throw ParseError("relator not cyclically reduced: " + word_to_string(alphabet, r));
  }
}

namespace {
std::string fresh_name(const Alphabet& a, int& counter) {
  for (;;) {
    std::string cand = "t" + std::to_string(++counter);
    if (!a.find(cand) && !a.find(cand + "^-1")) return cand;
  }
}
}  // namespace

Triangularization triangularize(const FinitePresentation& p) {
  p.validate();
  Triangularization out;
  out.presentation.alphabet = p.alphabet;
  Alphabet& alpha = out.presentation.alphabet;
  int counter = 0;
  for (const Word& r : p.relators) {
    if (r.size() == 1) {
      if (p.alphabet.inverse(r.syms[0]) == r.syms[0])
        throw ParseError("length-1 relator on an involutive generator cannot be doubled");
      out.presentation.relators.push_back(Word({r.syms[0], r.syms[0]}));
      continue;
    }
    if (r.size() <= 3) {
      out.presentation.relators.push_back(r);
      continue;
    }
    // Prefix chaining: t_j stands for the first j+1 letters of r.
    size_t L = r.size();
    std::vector<Sym> prefix_gen(L);  // prefix_gen[j] represents r[0..j], defined for 1 <= j <= L-3
    for (size_t j = 1; j + 3 <= L; ++j) {
      Sym t = alpha.add_generator(fresh_name(alpha, counter));
      prefix_gen[j] = t;
      Word def(std::vector<Sym>(r.syms.begin(), r.syms.begin() + static_cast<long>(j) + 1));
      out.fresh_definitions.emplace_back(t, def);
    }
    for (size_t j = 0; j + 2 < L; ++j) {
      Word tri;
      tri.syms.push_back(j == 0 ? r.syms[0] : prefix_gen[j]);
      tri.syms.push_back(r.syms[j + 1]);
      if (j + 3 == L)
        tri.syms.push_back(r.syms[j + 2]);
      else
        tri.syms.push_back(alpha.inverse(prefix_gen[j + 1]));
      out.presentation.relators.push_back(tri);
    }
  }
  out.presentation.validate();
  return out;
}

}  // namespace vk
