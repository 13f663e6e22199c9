#pragma once

#include "vankamp/diagram.hpp"

namespace vk {

/// An equivalence class of parabolic faces under shared-edge adjacency.
struct Cluster {
  int parabolic = -1;
  std::vector<int> faces;  // face indices in the host diagram
  /// Boundary cycles of the closed cluster, as host darts on the complement
  /// side (the dart of each boundary edge that does not lie in a cluster
  /// face).
  std::vector<std::vector<int>> boundary_walks;
  bool simply_connected = false;  // a disk with an embedded boundary circle
  bool complicated = false;       // boundary meets the diagram boundary in >= 2 edges
  int outer_boundary_edges = 0;   // number of edges of the boundary on the outer walk
  int boundary_length() const {
    size_t n = 0;
    for (const auto& w : boundary_walks) n += w.size();
    return static_cast<int>(n);
  }
};

/// Cluster decomposition of a valid diagram. Asserts that every boundary
/// edge of a cluster that is not on the diagram boundary has complexity 1
/// (its far side is forced to be a pairing cell).
std::vector<Cluster> clusters(const RelativePresentation& x, const Diagram& d);

/// The fan-triangulated disk filling of a cyclically trivial word of
/// parabolic letters of index i: n-2 triangles fanned from the terminal
/// vertex of the last letter, interior edge j labeled by the canonical
/// geodesic of the prefix product a_1...a_j. The result's boundary word is
/// exactly `boundary`. Throws DegeneratePrefix when a proper prefix product
/// is trivial, ParseError when the full product is not.
Diagram standard_filling(const RelativePresentation& x, int i, const HatWord& boundary, int cap);

/// Removes the given faces (which must span a disk with embedded boundary)
/// and glues `filling` into the hole. The filling's boundary word must match
/// the labels along the hole's complement-side walk up to rotation.
Diagram replace_disk(const RelativePresentation& x, const Diagram& d,
                     const std::vector<int>& face_ids, const Diagram& filling, int cap);

/// Replaces the interior of every cluster by the standard filling of its
/// boundary (boundary length 2 clusters become single bigons). Requires all
/// clusters simply connected; the outer boundary word is unchanged.
Diagram refill_standard(const RelativePresentation& x, const Diagram& d, int cap);

/// A maximal subpath of a complicated cluster's boundary circle containing
/// no edge of the diagram boundary. The subpath may pass through vertices of
/// the diagram boundary; where the cluster touches the rest of the diagram
/// only at a vertex between two of its own boundary edges, the contact is a
/// zero-length arc (`darts` empty, possibly facing an empty regular piece).
struct ArcOfCluster {
  int cluster = -1;        // index into Decomposition::clusters
  std::vector<int> darts;  // complement-side host darts along the arc
  int piece = -1;          // regular piece on the far side
};

struct Piece {
  bool is_cluster = false;
  int cluster = -1;        // set when is_cluster
  std::vector<int> faces;  // 2-cells of a regular piece
  std::vector<int> edges;  // non-thick edges attached to a regular piece
};

struct Decomposition {
  std::vector<Cluster> clusters;
  std::vector<Piece> pieces;
  std::vector<ArcOfCluster> arcs;
  /// One entry per arc: (piece index of its complicated cluster, piece index
  /// of the regular piece on its far side). These are the tree edges of the
  /// incidence graph on `pieces`.
  std::vector<std::pair<int, int>> incidence;
};

/// Cuts the diagram along its complicated clusters. Asserts the counting
/// facts: the incidence graph is a bipartite tree, pieces and arcs are both
/// bounded by the boundary length, and each complicated cluster's degree is
/// at most its number of boundary edges on the outer walk (strictly smaller
/// at tree leaves).
Decomposition decompose_pieces(const RelativePresentation& x, const Diagram& d);

}  // namespace vk
