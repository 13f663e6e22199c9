#pragma once

#include <functional>
#include <optional>

#include "vankamp/cluster.hpp"

namespace vk {

/// A complicated cluster with each arc-of-cluster replaced by a chord: a
/// single edge labeled by the canonical geodesic of the arc's letter
/// product. `chorded` glues a standardly filled disk behind each chord;
/// `standardized` refills the result, so its area is boundary length - 2.
struct ChordedCluster {
  int cluster = -1;  // index into Decomposition::clusters
  Diagram chorded;
  Diagram standardized;
  std::vector<int> arc_ids;      // indices into Decomposition::arcs
  std::vector<int> chord_pos;    // outer-walk index of each arc's chord
  std::vector<HatLetter> chord;  // chord label as read on the cluster side
};

/// A regular piece with a standardly filled cluster glued along each
/// incident arc; the exposed chord carries the inverse of the cluster
/// side's chord label. `reduced` is the minimizer's output when one is
/// supplied (and equals `augmented` otherwise or when the search capped).
struct AugmentedPiece {
  int piece = -1;  // index into Decomposition::pieces
  Diagram augmented;
  Diagram reduced;
  bool minimization_capped = false;
  std::vector<int> arc_ids;
  std::vector<int> chord_pos;
  std::vector<HatLetter> chord;
};

/// Boundary-preserving area minimization hook. Returns the minimal diagram
/// with the identical boundary word, or nullopt when its search caps out.
using Minimizer = std::function<std::optional<Diagram>(const Diagram&)>;

/// Cuts out the given complicated cluster and replaces each arc by a chord.
/// Throws DegenerateArc when an arc's letter product is the identity of the
/// parabolic subgroup.
ChordedCluster add_chords(const RelativePresentation& x, const Diagram& d,
                          const Decomposition& dec, int cluster_index, int cap);

/// Cuts out the given regular piece and glues a standardly filled cluster
/// along each incident arc.
AugmentedPiece augment_piece(const RelativePresentation& x, const Diagram& d,
                             const Decomposition& dec, int piece_index, int cap,
                             const Minimizer& minimize = {});

/// Reassembles the parts along their chords, pairwise per arc. With
/// use_reduced the standardized / minimized diagrams are glued, otherwise
/// the raw chorded / augmented ones. The result's boundary word equals the
/// source diagram's up to rotation and its area is the sum of the parts'
/// areas.
Diagram reglue(const RelativePresentation& x, const Decomposition& dec,
               const std::vector<ChordedCluster>& cs, const std::vector<AugmentedPiece>& ps,
               bool use_reduced, int cap);

/// One reduction part with the numbers the area-ratio arguments inspect.
struct Candidate {
  bool from_cluster = false;
  int index = -1;  // cluster index or piece index in the decomposition
  HatWord boundary;
  Diagram diagram;
  Measure size;
  bool minimization_capped = false;
};

/// The full list of reduction parts of a thick diagram whose clusters are
/// simply connected: the minimized augmented pieces and the standardized
/// chorded clusters. A diagram without complicated clusters yields itself
/// as the single candidate.
std::vector<Candidate> reduction_candidates(const RelativePresentation& x, const Diagram& d,
                                            int cap, const Minimizer& minimize = {});

}  // namespace vk
