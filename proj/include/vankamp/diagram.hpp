#pragma once

#include <string>
#include <vector>

#include "vankamp/map.hpp"
#include "vankamp/relpres.hpp"

namespace vk {

/// A Van Kampen diagram over a relative presentation, stored as a labeled
/// planar map. Primary data are the face walks (cycles of the face
/// permutation): faces[0] is the unbounded outer face, beginning at the base
/// dart; faces[1..] are the bounded relator cells. The vertex rotation is
/// derived (sigma[x] = phi[x ^ 1]). Darts pair as (2e, 2e+1).
struct Diagram {
  std::vector<HatLetter> label;         // one letter per dart
  std::vector<std::vector<int>> faces;  // faces[0] = outer walk
  std::vector<RelatorClass> tags;       // parallel to faces; tags[0] untagged

  int dart_count() const { return static_cast<int>(label.size()); }
  int edge_count() const { return dart_count() / 2; }
  int base_dart() const { return faces.at(0).empty() ? -1 : faces[0][0]; }
  long long area() const { return static_cast<long long>(faces.size()) - 1; }
  std::vector<int> sigma() const { return sigma_from_faces(faces, dart_count()); }

  /// The empty diagram: a single vertex, no edges.
  static Diagram empty() { return Diagram{{}, {{}}, {RelatorClass{}}}; }
};

/// Structural validation. Returns the list of violations (empty means ok):
/// dart/label/tag consistency, label involution and canonical parabolic
/// letters, connectivity, genus 0, and classification of every bounded
/// face's boundary word to its stored tag.
std::vector<std::string> validate(const RelativePresentation& x, const Diagram& d);

/// Throws InternalInvariantError listing the violations when d is invalid.
void require_valid(const RelativePresentation& x, const Diagram& d);

/// The outer boundary word, read from the base dart.
HatWord boundary_word(const Diagram& d);

/// Boundary word of face f (0 = outer), read along its stored walk.
HatWord face_word(const Diagram& d, int f);

struct Measure {
  long long area = 0;
  long long norm1 = 0;
  long long norminf = 0;
  bool is_thick = false;
};

/// Area plus edge-complexity norms; thick iff every edge borders a bounded
/// face.
Measure measure(const Diagram& d);

/// Connected components of the union of bounded faces with their boundary
/// edges and vertices, each re-based at the least dart of its outer walk
/// (after renumbering). Components are ordered by their least original dart.
std::vector<Diagram> thick_components(const Diagram& d);

/// Canonical trace for labeled-isomorphism dedup (orientation preserving,
/// basepoint free): minimum over start darts of the breadth-first
/// relabeling trace of sigma, labels and per-dart face tags.
std::vector<long long> canonical_form(const Diagram& d);

/// Rotates the outer walk so it starts at the given dart (which must lie on
/// the outer walk).
Diagram rebase(const Diagram& d, int dart);

/// Glues a new bounded face onto the outer boundary. The face walk is the
/// run of `glued` consecutive outer darts starting at outer index `start`,
/// followed by fresh edges labeled by `fresh` (their inverses are filled
/// in via x). With glued == 0, `start` names the corner before outer dart
/// `start`. The old base dart is kept when it survives. The result is not
/// validated; callers validate once construction is finished.
Diagram attach_face(const RelativePresentation& x, const Diagram& d, int start, int glued,
                    const std::vector<HatLetter>& fresh, RelatorClass tag, int cap);

/// Attaches a pendant (free) edge at the corner before outer index `corner`.
Diagram attach_pendant(const RelativePresentation& x, const Diagram& d, int corner,
                       const HatLetter& letter, int cap);

/// Glues diagram b into the outer region of diagram a, identifying the run
/// of `glued` edges of a's outer walk starting at index pos_a with the run
/// of b's outer walk starting at pos_b, reversed. The identified runs must
/// carry mutually inverse labels (checked). With glued == 0 the diagrams
/// are wedged at the corners pos_a / pos_b. Returns the merged diagram,
/// keeping a's dart ids and a's base when it survives. When b_to_out is
/// given it receives the map from b's darts to darts of the result.
Diagram glue_diagrams(const RelativePresentation& x, const Diagram& a, int pos_a,
                      const Diagram& b, int pos_b, int glued, int cap,
                      std::vector<int>* b_to_out = nullptr);

/// Extraction of the closed subcomplex spanned by a set of bounded faces.
struct ExtractedSubmap {
  std::vector<HatLetter> label;         // per new dart
  std::vector<std::vector<int>> faces;  // selected faces then untagged walks
  std::vector<RelatorClass> tags;       // parallel; untagged entries default
  std::vector<int> untagged;            // indices into faces of untagged walks
  std::vector<int> to_old;              // new dart -> dart of the host diagram
};

/// face_ids are indices >= 1 into d.faces. The submap keeps every dart of a
/// selected face together with its opposite; rotations restrict to kept
/// darts. Untagged walks are the boundary cycles of the subcomplex.
ExtractedSubmap extract_submap(const Diagram& d, const std::vector<int>& face_ids);

}  // namespace vk
