#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <optional>
#include <set>

#include "vankamp/surgery.hpp"

namespace vk {

using BigInt = boost::multiprecision::cpp_int;

/// The constant regime a detection run operates under. Paper mode derives
/// every field from K by the closed formulas and enforces K >= 10^6 and
/// rho >= 3 * area_cap; scaled mode takes user-supplied fields and carries
/// no correctness guarantee, so every report is stamped with its mode.
struct ConstantPack {
  bool paper_faithful = false;
  BigInt K;
  BigInt Kprime;        // (600 K)^2
  BigInt rho;           // 10^26 K^5
  BigInt B;             // 2 * 10^6 * K^2, the complexity cap
  BigInt area_cap;      // 240 K
  BigInt proper_bound;  // 12 K

  static ConstantPack paper(const BigInt& k);
  static ConstantPack scaled(const BigInt& k, const BigInt& b, const BigInt& area_cap,
                             const BigInt& proper_bound);

  /// 720 K + ||w||_1, the complexity bound that makes min_area complete.
  BigInt min_area_complexity_bound(const HatWord& w) const;

  /// The linear bound area <= (sqrt(K)/600) * length, compared exactly by
  /// cross-squaring: (600 * area)^2 <= K * length^2.
  bool ratio_ok(long long area, long long length) const;

  /// Largest integer area passing ratio_ok for the given length.
  BigInt ratio_threshold(long long length) const;
};

/// Exact constant formulas at a given K >= 1:
/// (Kprime, rho, B, area_cap, proper_bound).
struct PaperConstants {
  BigInt Kprime, rho, B, area_cap, proper_bound;
};
PaperConstants paper_constants(const BigInt& k);

/// Finite caps bounding the diagram enumeration universe.
struct EnumerationCaps {
  long long max_area = 0;
  long long max_complexity = 0;  // edge-label complexity, also the letter ball radius
  long long max_boundary_length = 0;
  int ball_radius_cap = 64;  // guard for the per-parabolic geodesic balls
};

/// Enumeration frontier between area layers; serializable for resumption.
/// `frontier` holds the diagrams of area next_area - 1 (deduplicated), and
/// `seen` the canonical forms of every diagram generated so far.
struct EnumerationState {
  int version = 1;
  long long next_area = 1;
  std::vector<Diagram> frontier;
  std::set<std::vector<long long>> seen;

  static EnumerationState start() {
    EnumerationState st;
    st.frontier.push_back(Diagram::empty());
    return st;
  }
};

/// Return false to stop the enumeration early.
using DiagramSink = std::function<bool(const Diagram&)>;

/// Advances the state by one area layer, emitting the new layer's diagrams
/// whose boundary length passes the cap, in canonical-form order. Returns
/// false when the layer is empty or next_area exceeds max_area (fixpoint).
bool enumerate_layer(const RelativePresentation& x, const EnumerationCaps& caps,
                     EnumerationState& state, const DiagramSink& sink);

/// Emits, exactly once up to labeled isomorphism, every valid thick diagram
/// within the caps: area layers in ascending order, canonical-form order
/// inside each layer. Deterministic; rerunning yields the same sequence.
void enumerate_thick_diagrams(const RelativePresentation& x, const EnumerationCaps& caps,
                              const DiagramSink& sink);

/// Convenience collector over enumerate_thick_diagrams.
std::vector<Diagram> all_thick_diagrams(const RelativePresentation& x,
                                        const EnumerationCaps& caps);

/// Exact minimal filling area within the caps. `exceeds_caps` is set when
/// every filling needs some thick component beyond the caps (in particular
/// when the minimum exceeds caps.max_area); otherwise `area` is exact and
/// `witness` is a valid diagram whose boundary word equals w verbatim.
struct MinAreaResult {
  bool exceeds_caps = false;
  long long area = -1;
  std::optional<Diagram> witness;
};

/// Throws NotTrivialError when w does not expand to a trivial word.
MinAreaResult min_area(const RelativePresentation& x, const HatWord& w,
                       const EnumerationCaps& caps, int cap);

/// A boundary-preserving Minimizer backed by min_area, for surgery.
Minimizer area_minimizer(const RelativePresentation& x, const EnumerationCaps& caps, int cap);

/// One round of the detection loop at a fixed pack: enumerates W(K) (the
/// boundary words of the thick corpus under the pack's caps) and checks the
/// linear bound on each.
struct RoundResult {
  bool pass = false;
  long long words_checked = 0;
  // set on failure:
  HatWord witness;
  long long witness_area = -1;
  long long witness_length = -1;
};

/// max_words < 0 means unbounded. Throws BudgetExhausted mid-round when the
/// word budget runs out before a verdict.
RoundResult check_round(const RelativePresentation& x, const ConstantPack& pack,
                        long long max_words, int cap);

/// Presentation of the i-th parabolic subgroup on its own generators, with
/// relators = all oracle-trivial S_i-words of length <= length_cap,
/// deduplicated up to free and cyclic reduction, rotation and inversion.
FinitePresentation parabolic_presentation(const RelativePresentation& x, int i,
                                          long long length_cap);

/// Absorption witness: generator s equals the word a over S_i in G.
struct Absorption {
  Sym s;
  Word a;
};

/// Proper iff some generator of S has no equal word in the proper_bound ball
/// of H_i; otherwise every generator is absorbed and the witnesses are
/// returned. Throws Overflow when the bound exceeds the configured radius
/// cap (verdict withheld).
struct PropernessResult {
  bool proper = false;
  std::vector<Absorption> absorbs;
};
PropernessResult properness(const RelativePresentation& x, int i, const ConstantPack& pack,
                            int radius_cap);

/// Outcome of the detection loop.
struct ParabolicReport {
  FinitePresentation presentation;
  bool presentation_capped = false;  // length cap fell short of rho
  bool proper = false;
  bool properness_withheld = false;  // ball overflow against the radius cap
  std::vector<Absorption> absorbs;
};

struct FailedRound {
  BigInt K;
  HatWord witness;
  long long witness_area = -1;
  long long witness_length = -1;
};

struct DetectionReport {
  bool terminated = false;  // false: round budget exhausted
  bool paper_faithful = false;
  BigInt K;  // the passing K, or the last K attempted
  long long rounds_run = 0;
  long long words_checked = 0;
  std::vector<ParabolicReport> parabolics;  // on termination
  std::vector<FailedRound> failures;        // one per failed round
};

struct DetectionBudget {
  long long max_rounds = 1;
  long long max_words_per_round = -1;          // < 0: unbounded
  long long relator_length_cap = 8;            // practical cap for presentations
  BigInt k_stride = 1;                         // K increment between rounds
  int radius_cap = 64;                         // properness / letter ball guard
};

/// Iterates K = K0, K0 + stride, ... running check_round; on a passing
/// round emits presentations and properness verdicts per parabolic, else
/// reports the failure witnesses of every round until the budget ends.
DetectionReport detect(const RelativePresentation& x, const ConstantPack& pack0,
                       const DetectionBudget& budget);

}  // namespace vk
