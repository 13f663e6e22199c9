#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "vankamp/core.hpp"

namespace vk {

/// Total decision procedure for triviality of words in an ambient group G.
/// Implementations must respect free reduction, inversion and concatenation
/// of trivial words; everything downstream is parameterized by this.
class WordProblemOracle {
 public:
  explicit WordProblemOracle(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}
  virtual ~WordProblemOracle() = default;

  const Alphabet& alphabet() const { return alphabet_; }

  bool is_trivial(const Word& w) const {
    return decide(free_reduce(alphabet_, w));
  }
  bool equal(const Word& u, const Word& v) const {
    return is_trivial(u.concat(word_inverse(alphabet_, v)));
  }

 protected:
  /// Called with a freely reduced word over alphabet().
  virtual bool decide(const Word& reduced) const = 0;

 private:
  Alphabet alphabet_;
};

using OraclePtr = std::shared_ptr<const WordProblemOracle>;

/// Free group on the alphabet: trivial iff freely trivial.
class FreeOracle : public WordProblemOracle {
 public:
  explicit FreeOracle(Alphabet a) : WordProblemOracle(std::move(a)) {}

 protected:
  bool decide(const Word& reduced) const override { return reduced.empty(); }
};

/// Free abelian group on the generators (involutive generators contribute
/// mod 2): trivial iff every exponent sum vanishes.
class AbelianOracle : public WordProblemOracle {
 public:
  explicit AbelianOracle(Alphabet a) : WordProblemOracle(std::move(a)) {}

 protected:
  bool decide(const Word& reduced) const override;
};

/// Finite group given by an explicit multiplication table.
class TableOracle : public WordProblemOracle {
 public:
  /// `sym_to_element` maps each alphabet symbol to an element index;
  /// `table[x][y]` is the product; `identity` is the neutral element.
  TableOracle(Alphabet a, std::vector<int> sym_to_element,
              std::vector<std::vector<int>> table, int identity);

  /// Parses the text format:
  ///   elements <n>
  ///   identity <k>
  ///   sym <name> <element>        (one line per alphabet symbol)
  ///   row <x> <p0> <p1> ... <pn>  (one line per element)
  static std::shared_ptr<TableOracle> from_text(const Alphabet& a, const std::string& text);

 protected:
  bool decide(const Word& reduced) const override;

 private:
  std::vector<int> sym_to_element_;
  std::vector<std::vector<int>> table_;
  int identity_;
};

/// Free product of two oracles over the disjoint union of their alphabets.
/// Decides by syllable reduction to a fixpoint.
class FreeProductOracle : public WordProblemOracle {
 public:
  FreeProductOracle(OraclePtr left, OraclePtr right);

 protected:
  bool decide(const Word& reduced) const override;

 private:
  OraclePtr left_, right_;
  int left_size_;
  bool is_left(Sym s) const { return s < left_size_; }
  Word project(const Word& w, bool left) const;
};

/// Direct product of two oracles over the disjoint union of their alphabets.
class DirectProductOracle : public WordProblemOracle {
 public:
  DirectProductOracle(OraclePtr left, OraclePtr right);

 protected:
  bool decide(const Word& reduced) const override;

 private:
  OraclePtr left_, right_;
  int left_size_;
};

/// Combined alphabet for product oracles: left's names then right's names.
Alphabet disjoint_union_alphabet(const Alphabet& left, const Alphabet& right);

/// Oracle over an enlarged alphabet whose extra generators are definitional
/// abbreviations: each is replaced by its defining word over the inner
/// oracle's alphabet before deciding. Used for triangularized presentations,
/// whose fresh generators stand for relator prefixes.
class SubstitutionOracle : public WordProblemOracle {
 public:
  /// `enlarged` must extend inner->alphabet(); `definitions` must cover
  /// exactly the added generators, with defining words over the inner
  /// alphabet.
  SubstitutionOracle(OraclePtr inner, Alphabet enlarged,
                     std::vector<std::pair<Sym, Word>> definitions);

 protected:
  bool decide(const Word& reduced) const override;

 private:
  OraclePtr inner_;
  std::vector<Word> expansion_;  // per enlarged symbol, word over inner alphabet
};

/// Geodesic machinery for a parabolic subgroup H = <sub_syms> of the ambient
/// group, with memoized shortlex-canonical geodesic representatives.
class SubgroupContext {
 public:
  SubgroupContext(OraclePtr ambient, std::vector<Sym> sub_syms,
                  int radius_cap = 64, size_t size_cap = 1u << 20);

  const WordProblemOracle& ambient() const { return *ambient_; }
  const std::vector<Sym>& sub_syms() const { return sub_syms_; }
  int radius_cap() const { return radius_cap_; }

  /// All elements of H at distance <= r: one shortlex-minimal geodesic per
  /// element, sorted shortlex (so the identity/empty word comes first).
  /// Throws Overflow when r exceeds the radius cap or the ball exceeds the
  /// size cap.
  std::vector<Word> ball(int r) const;

  /// Shortlex-minimal word over sub_syms equal to w in G, provided its
  /// length is <= cap; nullopt when the ball of radius cap has no match.
  std::optional<Word> canonical_geodesic(const Word& w, int cap) const;

  /// True iff w (a word over the ambient alphabet) lies in H within the
  /// radius cap; throws Overflow when the ball search cannot settle it.
  bool contains(const Word& w, int radius) const;

 private:
  void grow_to(int r) const;

  OraclePtr ambient_;
  std::vector<Sym> sub_syms_;
  int radius_cap_;
  size_t size_cap_;
  // reps_ sorted by (length, lex); layer_end_[d] = #reps with length <= d.
  mutable std::vector<Word> reps_;
  mutable std::vector<size_t> layer_end_;
  mutable std::map<std::pair<std::vector<Sym>, int>, std::optional<Word>>
      geodesic_cache_;
};

}  // namespace vk
