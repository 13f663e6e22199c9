#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "vankamp/oracle.hpp"

namespace vk {

/// A letter of the infinite alphabet S-hat = S ⊔ H_1 ⊔ ... ⊔ H_n.
/// Parabolic letters store the shortlex-canonical geodesic of a *nonempty*
/// element of H_i; identity letters are excluded by construction.
struct HatLetter {
  enum Kind : uint8_t { SLetter, PLetter } kind;
  Sym sym = -1;        // SLetter
  int parabolic = -1;  // PLetter: index into the parabolic list
  Word geodesic;       // PLetter: canonical geodesic over S_i

  static HatLetter s_letter(Sym s) { return {SLetter, s, -1, {}}; }
  static HatLetter p_letter(int i, Word geo) { return {PLetter, -1, i, std::move(geo)}; }

  int complexity() const {
    return kind == SLetter ? 1 : static_cast<int>(geodesic.size());
  }
  bool operator==(const HatLetter& o) const {
    return kind == o.kind && sym == o.sym && parabolic == o.parabolic && geodesic == o.geodesic;
  }
  bool operator!=(const HatLetter& o) const { return !(*this == o); }
  bool operator<(const HatLetter& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (kind == SLetter) return sym < o.sym;
    if (parabolic != o.parabolic) return parabolic < o.parabolic;
    return shortlex_less(geodesic, o.geodesic);
  }
};

struct HatWord {
  std::vector<HatLetter> letters;

  HatWord() = default;
  explicit HatWord(std::vector<HatLetter> l) : letters(std::move(l)) {}
  size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  bool operator==(const HatWord& o) const { return letters == o.letters; }
  bool operator<(const HatWord& o) const { return letters < o.letters; }
};

struct HatNorms {
  long long length = 0;
  long long norm1 = 0;
  long long norminf = 0;
};

/// (length, sum of letter complexities, max letter complexity).
HatNorms norms(const HatWord& w);

/// Classification of a candidate relator of the exact relative presentation.
enum class RelatorKind { RPrimeBase, RPrimePairing, Parabolic, NotARelator };
struct RelatorClass {
  RelatorKind kind = RelatorKind::NotARelator;
  int parabolic = -1;  // set for RPrimePairing and Parabolic
  bool is_relator() const { return kind != RelatorKind::NotARelator; }
  bool operator==(const RelatorClass& o) const {
    return kind == o.kind && parabolic == o.parabolic;
  }
};

/// The exact relative presentation X_infty over S-hat: triangular base
/// relators R, pairing relators, and the parabolic multiplication tables
/// (realized as bigons and triangles on nonidentity letters).
class RelativePresentation {
 public:
  /// Builds X_infty. `subsets` lists each S_i as a symmetric set of symbols
  /// of P's alphabet; P must be triangular.
  static RelativePresentation build_exact(const FinitePresentation& p,
                                          const std::vector<std::vector<Sym>>& subsets,
                                          OraclePtr oracle, int radius_cap = 64,
                                          size_t ball_size_cap = 1u << 20);

  const FinitePresentation& base() const { return base_; }
  const Alphabet& alphabet() const { return base_.alphabet; }
  const WordProblemOracle& oracle() const { return *oracle_; }
  OraclePtr oracle_ptr() const { return oracle_; }
  int parabolic_count() const { return static_cast<int>(parabolics_.size()); }
  const SubgroupContext& parabolic(int i) const { return parabolics_.at(static_cast<size_t>(i)); }

  /// Stored for constant formulas only; -1 encodes infinity. Runtime relator
  /// tests always use the exact presentation.
  long long rho() const { return rho_; }

  /// Canonicalizes a word over S_i into a parabolic letter. Throws
  /// Overflow past the geodesic cap and ParseError on identity elements.
  HatLetter make_pletter(int i, const Word& over_si, int cap) const;

  /// Inverse hat letter: for parabolic letters the canonical geodesic of the
  /// inverse element (same length).
  HatLetter letter_inverse(const HatLetter& l, int cap) const;

  HatWord hat_inverse(const HatWord& w, int cap) const;

  /// Expands parabolic letters to their S_i-words and concatenates.
  Word expand(const HatWord& w) const;

  /// True iff w is trivial in G after expansion.
  bool hat_trivial(const HatWord& w) const { return oracle_->is_trivial(expand(w)); }

  /// Classifies a word of length <= 3 per the relator classes of X_infty.
  RelatorClass classify_relator(const HatWord& w) const;

 private:
  FinitePresentation base_;
  OraclePtr oracle_;
  std::vector<SubgroupContext> parabolics_;
  long long rho_ = -1;
};

std::string hat_letter_to_string(const RelativePresentation& x, const HatLetter& l);
std::string hat_word_to_string(const RelativePresentation& x, const HatWord& w);

/// Parses the hat-word syntax used by the CLI: whitespace-separated tokens,
/// each either a bare symbol name (S-letter) or `parI:w1.w2...` with `.`
/// separating the symbols of a word over S_I (1-based parabolic index).
/// A symbol token may carry `^-k` / `^k` exponents, e.g. `par1:a^-2`.
HatWord parse_hat_word(const RelativePresentation& x, const std::string& text, int cap);

}  // namespace vk
