#include "vankamp/oracle.hpp"

#include <algorithm>
#include <sstream>

namespace vk {

bool AbelianOracle::decide(const Word& reduced) const {
  const Alphabet& a = alphabet();
  std::vector<long long> expo(static_cast<size_t>(a.size()), 0);
  for (Sym s : reduced.syms) {
    Sym inv = a.inverse(s);
    if (inv == s) {
      expo[static_cast<size_t>(s)] ^= 1;  // involutive: exponent mod 2
    } else if (inv < s) {
      --expo[static_cast<size_t>(inv)];
    } else {
      ++expo[static_cast<size_t>(s)];
    }
  }
  return std::all_of(expo.begin(), expo.end(), [](long long e) { return e == 0; });
}

TableOracle::TableOracle(Alphabet a, std::vector<int> sym_to_element,
                         std::vector<std::vector<int>> table, int identity)
    : WordProblemOracle(std::move(a)),
      sym_to_element_(std::move(sym_to_element)),
      table_(std::move(table)),
      identity_(identity) {
  int n = static_cast<int>(table_.size());
  if (identity_ < 0 || identity_ >= n) throw ParseError("table identity out of range");
  if (static_cast<int>(sym_to_element_.size()) != alphabet().size())
    throw ParseError("table symbol map size mismatch");
  for (const auto& row : table_)
    if (static_cast<int>(row.size()) != n) throw ParseError("ragged multiplication table");
  // Each symbol's element must be inverted by its inverse symbol's element.
  for (Sym s = 0; s < alphabet().size(); ++s) {
    int x = sym_to_element_[static_cast<size_t>(s)];
    int y = sym_to_element_[static_cast<size_t>(alphabet().inverse(s))];
    if (x < 0 || x >= n || table_[static_cast<size_t>(x)][static_cast<size_t>(y)] != identity_)
      throw ParseError("table symbol map is not inverse-consistent");
  }
}

std::shared_ptr<TableOracle> TableOracle::from_text(const Alphabet& a, const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  int n = -1, identity = -1;
  std::vector<int> sym_to_element(static_cast<size_t>(a.size()), -1);
  std::vector<std::vector<int>> table;
  while (in >> tok) {
    if (tok == "elements") {
      in >> n;
      table.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), -1));
    } else if (tok == "identity") {
      in >> identity;
    } else if (tok == "sym") {
      std::string name;
      int e;
      in >> name >> e;
      auto s = a.find(name);
      if (!s) throw ParseError("table refers to unknown symbol " + name);
      sym_to_element[static_cast<size_t>(*s)] = e;
    } else if (tok == "row") {
      int x;
      in >> x;
      if (n < 0 || x < 0 || x >= n) throw ParseError("table row before elements / out of range");
      for (int y = 0; y < n; ++y) in >> table[static_cast<size_t>(x)][static_cast<size_t>(y)];
    } else {
      throw ParseError("unknown table directive: " + tok);
    }
  }
  for (size_t i = 0; i < sym_to_element.size(); ++i)
    if (sym_to_element[i] < 0)
      throw ParseError("table missing element for symbol " + a.name(static_cast<Sym>(i)));
  return std::make_shared<TableOracle>(a, std::move(sym_to_element), std::move(table), identity);
}

bool TableOracle::decide(const Word& reduced) const {
  int acc = identity_;
  for (Sym s : reduced.syms)
    acc = table_[static_cast<size_t>(acc)][static_cast<size_t>(sym_to_element_[static_cast<size_t>(s)])];
  return acc == identity_;
}

Alphabet disjoint_union_alphabet(const Alphabet& left, const Alphabet& right) {
  Alphabet a = left;
  for (Sym s = 0; s < right.size(); ++s) {
    if (right.inverse(s) == s) {
      a.add_generator(right.name(s), true);
    } else if (right.inverse(s) > s) {
      a.add_generator(right.name(s), false);
    }
  }
  return a;
}

FreeProductOracle::FreeProductOracle(OraclePtr left, OraclePtr right)
    : WordProblemOracle(disjoint_union_alphabet(left->alphabet(), right->alphabet())),
      left_(std::move(left)),
      right_(std::move(right)),
      left_size_(left_->alphabet().size()) {}

Word FreeProductOracle::project(const Word& w, bool left) const {
  Word out;
  for (Sym s : w.syms)
    if (is_left(s) == left) out.syms.push_back(left ? s : s - left_size_);
  return out;
}

bool FreeProductOracle::decide(const Word& reduced) const {
  // Normal form in a free product: repeatedly delete maximal one-factor
  // syllables that are trivial in their factor; trivial iff everything dies.
  Word cur = reduced;
  for (;;) {
    if (cur.empty()) return true;
    bool changed = false;
    std::vector<Sym> next;
    size_t i = 0;
    while (i < cur.size()) {
      size_t j = i;
      bool left = is_left(cur.syms[i]);
      while (j < cur.size() && is_left(cur.syms[j]) == left) ++j;
      Word syll;
      for (size_t k = i; k < j; ++k)
        syll.syms.push_back(left ? cur.syms[k] : cur.syms[k] - left_size_);
      bool dead = left ? left_->is_trivial(syll) : right_->is_trivial(syll);
      if (dead) {
        changed = true;
      } else {
        next.insert(next.end(), cur.syms.begin() + static_cast<long>(i),
                    cur.syms.begin() + static_cast<long>(j));
      }
      i = j;
    }
    if (!changed) return false;
    cur = Word(std::move(next));
  }
}

DirectProductOracle::DirectProductOracle(OraclePtr left, OraclePtr right)
    : WordProblemOracle(disjoint_union_alphabet(left->alphabet(), right->alphabet())),
      left_(std::move(left)),
      right_(std::move(right)),
      left_size_(left_->alphabet().size()) {}

bool DirectProductOracle::decide(const Word& reduced) const {
  Word l, r;
  for (Sym s : reduced.syms) {
    if (s < left_size_)
      l.syms.push_back(s);
    else
      r.syms.push_back(s - left_size_);
  }
  return left_->is_trivial(l) && right_->is_trivial(r);
}

SubstitutionOracle::SubstitutionOracle(OraclePtr inner, Alphabet enlarged,
                                       std::vector<std::pair<Sym, Word>> definitions)
    : WordProblemOracle(std::move(enlarged)), inner_(std::move(inner)) {
  const Alphabet& outer = alphabet();
  const Alphabet& base = inner_->alphabet();
  expansion_.resize(static_cast<size_t>(outer.size()));
  std::vector<char> defined(static_cast<size_t>(outer.size()), 0);
  for (Sym s = 0; s < base.size(); ++s) {
    if (outer.name(s) != base.name(s) || outer.inverse(s) != base.inverse(s))
      throw AlphabetMismatch("enlarged alphabet does not extend the inner alphabet");
    expansion_[static_cast<size_t>(s)] = Word({s});
    defined[static_cast<size_t>(s)] = 1;
  }
  for (const auto& [sym, def] : definitions) {
    if (sym < base.size() || !outer.is_generator(sym))
      throw ParseError("definition for a symbol that is not an added generator");
    check_in_alphabet(base, def);
    expansion_[static_cast<size_t>(sym)] = def;
    defined[static_cast<size_t>(sym)] = 1;
    Sym inv = outer.inverse(sym);
    if (inv != sym) {
      expansion_[static_cast<size_t>(inv)] = word_inverse(base, def);
      defined[static_cast<size_t>(inv)] = 1;
    }
  }
  for (Sym s = 0; s < outer.size(); ++s)
    if (!defined[static_cast<size_t>(s)])
      throw ParseError("added generator without definition: " + outer.name(s));
}

bool SubstitutionOracle::decide(const Word& reduced) const {
  Word expanded;
  for (Sym s : reduced.syms) {
    const Word& e = expansion_[static_cast<size_t>(s)];
    expanded.syms.insert(expanded.syms.end(), e.syms.begin(), e.syms.end());
  }
  return inner_->is_trivial(expanded);
}

SubgroupContext::SubgroupContext(OraclePtr ambient, std::vector<Sym> sub_syms,
                                 int radius_cap, size_t size_cap)
    : ambient_(std::move(ambient)),
      sub_syms_(std::move(sub_syms)),
      radius_cap_(radius_cap),
      size_cap_(size_cap) {
  std::sort(sub_syms_.begin(), sub_syms_.end());
  sub_syms_.erase(std::unique(sub_syms_.begin(), sub_syms_.end()), sub_syms_.end());
  const Alphabet& a = ambient_->alphabet();
  for (Sym s : sub_syms_) {
    if (!a.is_generator(s)) throw AlphabetMismatch("parabolic symbol outside ambient alphabet");
    if (!std::binary_search(sub_syms_.begin(), sub_syms_.end(), a.inverse(s)))
      throw ParseError("parabolic generating set is not symmetric: missing inverse of " +
                       a.name(s));
  }
  reps_.push_back(Word{});
  layer_end_.push_back(1);
}

void SubgroupContext::grow_to(int r) const {
  const Alphabet& a = ambient_->alphabet();
  while (static_cast<int>(layer_end_.size()) - 1 < r) {
    int d = static_cast<int>(layer_end_.size()) - 1;
    if (d >= radius_cap_)
      throw Overflow("subgroup ball radius cap exceeded", radius_cap_);
    size_t lo = d == 0 ? 0 : layer_end_[static_cast<size_t>(d) - 1];
    size_t hi = layer_end_[static_cast<size_t>(d)];
    // Parents scanned in shortlex order, generators ascending: candidates of
    // length d+1 arrive in shortlex order, so first occurrence per element is
    // the canonical geodesic.
    for (size_t p = lo; p < hi; ++p) {
      for (Sym s : sub_syms_) {
        Word cand = reps_[p];
        cand.syms.push_back(s);
        if (!is_reduced(a, cand)) continue;  // would revisit the parent
        bool known = false;
        for (const Word& rep : reps_) {
          if (ambient_->equal(cand, rep)) {
            known = true;
            break;
          }
        }
        if (!known) {
          reps_.push_back(std::move(cand));
          if (reps_.size() > size_cap_)
            throw Overflow("subgroup ball size cap exceeded",
                           static_cast<long long>(size_cap_));
        }
      }
    }
    layer_end_.push_back(reps_.size());
  }
}

std::vector<Word> SubgroupContext::ball(int r) const {
  if (r < 0) throw ParseError("negative ball radius");
  grow_to(r);
  return std::vector<Word>(
      reps_.begin(), reps_.begin() + static_cast<long>(layer_end_[static_cast<size_t>(r)]));
}

std::optional<Word> SubgroupContext::canonical_geodesic(const Word& w, int cap) const {
  for (Sym s : w.syms)
    if (!std::binary_search(sub_syms_.begin(), sub_syms_.end(), s))
      throw AlphabetMismatch("word leaves the parabolic sub-alphabet");
  auto key = std::make_pair(w.syms, cap);
  auto hit = geodesic_cache_.find(key);
  if (hit != geodesic_cache_.end()) return hit->second;
  std::optional<Word> out;
  if (ambient_->is_trivial(w)) {
    out = Word{};
  } else {
    for (int r = 1; r <= cap && !out; ++r) {
      grow_to(r);
      size_t lo = layer_end_[static_cast<size_t>(r) - 1];
      size_t hi = layer_end_[static_cast<size_t>(r)];
      for (size_t i = lo; i < hi; ++i)
        if (ambient_->equal(w, reps_[i])) {
          out = reps_[i];
          break;
        }
    }
  }
  geodesic_cache_.emplace(std::move(key), out);
  return out;
}

bool SubgroupContext::contains(const Word& w, int radius) const {
  if (ambient_->is_trivial(w)) return true;
  for (int r = 1; r <= radius; ++r) {
    grow_to(r);
    size_t lo = layer_end_[static_cast<size_t>(r) - 1];
    size_t hi = layer_end_[static_cast<size_t>(r)];
    for (size_t i = lo; i < hi; ++i)
      if (ambient_->equal(w, reps_[i])) return true;
  }
  return false;
}

}  // namespace vk
