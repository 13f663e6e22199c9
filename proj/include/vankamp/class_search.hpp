#pragma once

#include <json.hpp>
#include <memory>
#include <optional>

#include "vankamp/isoperimetry.hpp"
#include "vankamp/subprocess.hpp"

namespace vk {

/// A recursively enumerable class of finite presentations: either an
/// explicit list or a subprocess emitting presentations one per message
/// (presentation text format, messages separated by a blank line). The
/// consumed count is the resumption position; a restored enumerator replays
/// and discards that many messages.
class ClassEnumerator {
 public:
  static ClassEnumerator from_list(std::vector<FinitePresentation> list);
  static ClassEnumerator from_command(std::vector<std::string> argv);

  /// The next presentation, or nullopt when the source is exhausted.
  /// Subprocess messages that fail to parse raise ParseError.
  std::optional<FinitePresentation> next();

  long long consumed() const { return consumed_; }

  /// Fast-forwards a fresh enumerator to a checkpointed position.
  void skip_to(long long n);

 private:
  ClassEnumerator() = default;
  bool is_list_ = true;
  std::vector<FinitePresentation> list_;
  std::vector<std::string> argv_;
  std::shared_ptr<LineSubprocess> child_;  // spawned on first read
  long long consumed_ = 0;
};

/// Caps bounding the certified Tietze move universe.
struct TietzeCaps {
  long long max_moves = 0;             // path length budget for matching
  long long max_relator_length = 0;    // relators and definitions
  long long max_generators = 0;
  long long max_conjugate_factors = 2;   // redundancy certificate width
  long long max_conjugator_length = 1;  // per-factor conjugator length
};

/// One conjugate factor c r_i^(+-1) c^-1 of a redundancy certificate.
struct ConjugateFactor {
  int relator = -1;  // index into the presentation's other relators
  Word conjugator;
  bool inverted = false;
};

/// A certified Tietze move. Add/remove-relator moves carry an explicit
/// product-of-conjugates witness; generator moves carry the defining word.
struct TietzeMove {
  enum class Kind { AddRelator, RemoveRelator, AddGenerator, RemoveGenerator };
  Kind kind = Kind::AddRelator;
  Word relator;                               // AddRelator: the new relator
  int relator_index = -1;                     // RemoveRelator
  std::string gen_name;                       // Add/RemoveGenerator
  Word definition;                            // defining word, over the other generators
  std::vector<ConjugateFactor> certificate;   // relator redundancy witness
};

/// Applies one move, checking its certificate; throws ParseError when the
/// certificate does not verify or the move does not fit the presentation.
FinitePresentation apply_move(const FinitePresentation& p, const TietzeMove& m);

/// Relabeling-invariant key: minimum over generator bijections (respecting
/// involutivity) of the sorted relator multiset, relators canonicalized up
/// to rotation and inversion.
std::vector<long long> presentation_key(const FinitePresentation& p);

/// All presentations reachable by one certified move within the caps,
/// deduplicated up to relabeling (paired with the move that produced them).
std::vector<std::pair<TietzeMove, FinitePresentation>> tietze_neighbors(
    const FinitePresentation& p, const TietzeCaps& caps);

/// Matched iff <= caps.max_moves certified moves take p to q up to
/// relabeling; sound (Matched implies isomorphic), never a negative claim.
/// The path is replayed and re-verified before the result is returned.
struct MatchResult {
  bool matched = false;
  std::vector<TietzeMove> path;  // moves from p; empty when p, q relabel-equal
};
MatchResult match_presentation(const FinitePresentation& p, const FinitePresentation& q,
                               const TietzeCaps& caps);

/// Budget for the dovetailed search.
struct SearchBudget {
  long long max_steps = 0;     // total dovetail quanta across the whole run
  long long step_quantum = 1;  // detection rounds per tuple-track step
  TietzeCaps tietze;
  int max_tuple_n = 1;          // subsets per candidate family
  int max_word_length = 1;      // length of candidate subset elements
  DetectionBudget detect;       // per-round knobs (word budget, length cap, stride)
};

struct MatchCertificate {
  int parabolic = -1;
  long long class_member = -1;  // position in enumeration order
  std::vector<TietzeMove> path;
};

struct SearchReport {
  bool terminated = false;
  BigInt K;                               // passing K of the winning track
  std::vector<std::vector<Word>> tuple;   // winning candidate family
  std::vector<FinitePresentation> presentations;
  std::vector<MatchCertificate> matches;
  long long steps = 0;
  long long cycles = 0;
  long long class_members_seen = 0;
  long long tracks_spawned = 0;
  long long tracks_discarded = 0;
  /// Fairness trace: (cycle, track index) for every tuple-track quantum.
  std::vector<std::pair<long long, int>> trace;
};

nlohmann::json search_report_to_json(const Alphabet& base, const SearchReport& r);

/// Deterministic dovetailed search per the round-robin schedule: one class
/// quantum, one track spawn, then one step_quantum-sized step per live
/// tuple track, per cycle. Candidate families are enumerated by total word
/// length, then lexicographically, then subset count; each subset is
/// symmetrized. Tracks whose subgroup swallows the whole generator set are
/// discarded as improper.
class Searcher {
 public:
  Searcher(FinitePresentation base, OraclePtr oracle, ClassEnumerator cls,
           SearchBudget budget, ConstantPack pack0);

  /// Runs until termination or until budget.max_steps total steps, counting
  /// steps across resumed runs. Deterministic for fixed budget and inputs.
  SearchReport run();

  /// Version-stamped resumption state; valid after run() returns untermimated.
  nlohmann::json checkpoint() const;

  /// Restores from a checkpoint; throws ParseError on corruption.
  static Searcher restore(FinitePresentation base, OraclePtr oracle, ClassEnumerator cls,
                          SearchBudget budget, ConstantPack pack0, const nlohmann::json& ckpt);

 private:
  struct Track {
    std::vector<std::vector<Word>> tuple;
    std::optional<RelativePresentation> x;  // rebuilt lazily
    BigInt K;
    long long rounds = 0;
    bool discarded = false;
    bool passed = false;
  };

  void class_quantum();
  void spawn_quantum();
  bool track_quantum(int ti);  // one scheduled step; true when track passed
  std::optional<SearchReport> try_terminate();
  RelativePresentation& track_presentation(Track& t);
  ConstantPack track_pack(const Track& t) const;
  std::vector<std::vector<std::vector<Word>>> tuples_of_total_length(int total) const;

  FinitePresentation base_;
  OraclePtr oracle_;
  ClassEnumerator cls_;
  SearchBudget budget_;
  ConstantPack pack0_;

  // scheduler state (checkpointed)
  long long steps_ = 0;
  long long cycles_ = 0;
  std::vector<FinitePresentation> members_;
  long long next_tuple_ = 0;  // index into the global tuple enumeration order
  int pending_total_ = 1;     // next total-length bucket to expand
  std::vector<std::vector<std::vector<Word>>> tuple_queue_;
  std::vector<Track> tracks_;
  long long discarded_ = 0;
  std::vector<std::pair<long long, int>> trace_;
};

}  // namespace vk
