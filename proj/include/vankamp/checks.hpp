#pragma once

#include <json.hpp>

#include "vankamp/isoperimetry.hpp"

namespace vk {

/// Outcome of the structural invariant suite over an enumerated corpus.
/// Every violation names the check that failed, the offending diagram
/// (canonical form) and the numbers that broke the inequality. An empty
/// violation list certifies the suite.
struct CorpusCheckReport {
  long long diagrams = 0;
  long long clusters_seen = 0;
  long long decompositions = 0;
  long long refills = 0;
  std::vector<std::string> violations;
};

/// Runs every applicable invariant check on one valid diagram:
///   - interior cluster-boundary edges have complexity 1;
///   - for simply connected clusters, |dC|_1 <= 3 Area(D) + |dD|_1;
///   - Area(C) >= length(dC) - 2 for every cluster;
///   - non-complicated simply connected clusters satisfy
///     |dC|_inf <= length(dC) and |dC|_1 <= 2 length(dC);
///   - when all clusters are simply connected: the standard refill is valid,
///     boundary-preserving, no larger in area, its clusters fill with
///     equality, and (when additionally no cluster is complicated) the thick
///     norm bound |D|_inf <= 6 Area(D) holds for the refilled diagram;
///   - the piece decomposition is a bipartite tree with piece and arc counts
///     at most the boundary length and per-cluster degree bounds.
/// Appends human-readable violation records to report.violations.
void check_diagram_invariants(const RelativePresentation& x, const Diagram& d, int cap,
                              CorpusCheckReport& report);

/// Enumerates every thick diagram within the caps and runs
/// check_diagram_invariants on each.
CorpusCheckReport check_corpus(const RelativePresentation& x, const EnumerationCaps& caps,
                               int cap);

nlohmann::json corpus_check_to_json(const CorpusCheckReport& r);

}  // namespace vk
