#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vankamp/errors.hpp"

namespace vk {

/// Index of a symbol inside an Alphabet. Symbols are the generators together
/// with their formal inverses; the index order is the total order used for
/// shortlex comparisons (each generator precedes its inverse).
using Sym = int;

/// A finite symmetric generating alphabet: named symbols closed under a
/// declared involution. A symbol is its own inverse only if declared so.
class Alphabet {
 public:
  Alphabet() = default;

  /// Builds an alphabet from generator names. Every name in `generators`
  /// yields the symbol pair (g, g^-1) unless it also appears in
  /// `self_inverse`, in which case it yields a single involutive symbol.
  static Alphabet from_generators(const std::vector<std::string>& generators,
                                  const std::vector<std::string>& self_inverse = {});

  int size() const { return static_cast<int>(names_.size()); }
  Sym inverse(Sym s) const { return inv_.at(static_cast<size_t>(s)); }
  const std::string& name(Sym s) const { return names_.at(static_cast<size_t>(s)); }
  std::optional<Sym> find(std::string_view name) const;
  bool is_generator(Sym s) const { return s >= 0 && s < size(); }

  /// Appends a fresh generator (and its inverse unless self-inverse).
  /// Returns the symbol of the new generator.
  Sym add_generator(const std::string& name, bool self_inverse = false);

  bool operator==(const Alphabet& other) const {
    return names_ == other.names_ && inv_ == other.inv_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Sym> inv_;
};

/// A word over an alphabet, stored as a symbol-index sequence. Words do not
/// own their alphabet; operations take it explicitly.
struct Word {
  std::vector<Sym> syms;

  Word() = default;
  explicit Word(std::vector<Sym> s) : syms(std::move(s)) {}

  size_t size() const { return syms.size(); }
  bool empty() const { return syms.empty(); }
  bool operator==(const Word& o) const { return syms == o.syms; }
  bool operator!=(const Word& o) const { return syms != o.syms; }
  bool operator<(const Word& o) const { return syms < o.syms; }

  Word concat(const Word& o) const;
};

/// Throws AlphabetMismatch if any symbol of w falls outside the alphabet.
void check_in_alphabet(const Alphabet& a, const Word& w);

/// The unique reduced word freely equal to w. Idempotent.
Word free_reduce(const Alphabet& a, const Word& w);

/// The formal inverse word (reverse + symbolwise inverse).
Word word_inverse(const Alphabet& a, const Word& w);

/// Cyclic reduction: strips inverse first/last pairs after free reduction.
Word cyclic_reduce(const Alphabet& a, const Word& w);

bool is_reduced(const Alphabet& a, const Word& w);

/// Shortlex order: length first, then lexicographic by symbol index.
bool shortlex_less(const Word& u, const Word& v);

/// Lexicographically least cyclic rotation of w.
Word min_rotation(const Word& w);

std::string word_to_string(const Alphabet& a, const Word& w);

/// Parses `name` or `name^k` and appends |k| copies of the symbol (its
/// inverse when k < 0) to out. Throws ParseError on unknown names.
void append_symbol_token(const Alphabet& a, const std::string& token, std::vector<Sym>& out);

/// A finite presentation with cyclically reduced relators. The presentation
/// is triangular when every relator has length 2 or 3.
struct FinitePresentation {
  Alphabet alphabet;
  std::vector<Word> relators;

  bool is_triangular() const;
  /// Throws on empty relators, alphabet mismatch or non-cyclically-reduced
  /// relators.
  void validate() const;
};

/// Result of triangularize: the new presentation plus the defining word (over
/// the input alphabet) of every fresh generator, for verification by
/// substitution.
struct Triangularization {
  FinitePresentation presentation;
  std::vector<std::pair<Sym, Word>> fresh_definitions;
};

/// Replaces every relator of length L > 3 by L-3 fresh prefix generators and
/// L-2 triangular relators; length-1 relators r become r.r.
Triangularization triangularize(const FinitePresentation& p);

}  // namespace vk
