#include "doctest.h"
#include "helpers.hpp"
#include "vankamp/surgery.hpp"

using namespace vk;
using namespace vktest;

namespace {

constexpr int kCap = 64;

RelatorClass para(int i) { return RelatorClass{RelatorKind::Parabolic, i}; }
RelatorClass pairing(int i) { return RelatorClass{RelatorKind::RPrimePairing, i}; }

bool cyclic_equal(const HatWord& u, const HatWord& v) {
  if (u.size() != v.size()) return false;
  for (size_t r = 0; r < u.size(); ++r) {
    bool ok = true;
    for (size_t i = 0; i < u.size() && ok; ++i)
      ok = u.letters[(r + i) % u.size()] == v.letters[i];
    if (ok) return true;
  }
  return u.empty();
}

int pos_of(const Diagram& d, int dart) {
  const auto& outer = d.faces[0];
  for (size_t i = 0; i < outer.size(); ++i)
    if (outer[i] == dart) return static_cast<int>(i);
  REQUIRE(false);
  return -1;
}

// Two-triangle cluster with boundary (a^-1, a^-1, a, a) plus two pairing
// bigons on the complexity-1 run, so the cluster has one arc (a, a).
Diagram two_edge_arc(const RelativePresentation& x) {
  Diagram d = attach_face(x, Diagram::empty(), 0, 0,
                          {pl(x, 0, "a"), pl(x, 0, "a"), pl(x, 0, "a^-1 a^-1")}, para(0), kCap);
  d = attach_face(x, d, pos_of(d, 5), 1, {pl(x, 0, "a^-1"), pl(x, 0, "a^-1")}, para(0), kCap);
  d = attach_face(x, d, pos_of(d, 9), 1, {sl(x, "a^-1")}, pairing(0), kCap);
  d = attach_face(x, d, pos_of(d, 7), 1, {sl(x, "a^-1")}, pairing(0), kCap);
  require_valid(x, d);
  return d;
}

// Triangle cluster with a single pairing bigon: one single-edge arc.
Diagram one_edge_arc(const RelativePresentation& x) {
  Diagram d = attach_face(x, Diagram::empty(), 0, 0,
                          {pl(x, 0, "a"), pl(x, 0, "a"), pl(x, 0, "a^-1 a^-1")}, para(0), kCap);
  d = attach_face(x, d, pos_of(d, 1), 1, {sl(x, "a")}, pairing(0), kCap);
  require_valid(x, d);
  return d;
}

// Chain R1 - C1 - R2 - C2 - R3 - C3 - R4 from the cluster decomposition
// tests: 3 complicated clusters, 4 regular pieces, 6 single-edge arcs.
Diagram chain(const RelativePresentation& x) {
  Diagram d = attach_face(x, Diagram::empty(), 0, 0, {sl(x, "a^-1"), pl(x, 0, "a")},
                          pairing(0), kCap);
  auto two_triangles = [&](int at) {
    int n0 = d.dart_count();
    d = attach_face(x, d, pos_of(d, at), 1, {pl(x, 0, "a a"), pl(x, 0, "a^-1")}, para(0), kCap);
    d = attach_face(x, d, pos_of(d, n0 + 3), 1, {pl(x, 0, "a"), pl(x, 0, "a^-1 a^-1")}, para(0),
                    kCap);
    return d.dart_count() - 3;
  };
  auto double_bigon = [&](int at) {
    int n0 = d.dart_count();
    d = attach_face(x, d, pos_of(d, at), 1, {sl(x, "a")}, pairing(0), kCap);
    d = attach_face(x, d, pos_of(d, n0 + 1), 1, {pl(x, 0, "a")}, pairing(0), kCap);
    return d.dart_count() - 1;
  };
  int at = two_triangles(3);
  at = double_bigon(at);
  at = two_triangles(at);
  at = double_bigon(at);
  at = two_triangles(at);
  d = attach_face(x, d, pos_of(d, at), 1, {sl(x, "a")}, pairing(0), kCap);
  require_valid(x, d);
  return d;
}

}  // namespace

TEST_CASE("add_chords replaces a two-edge arc by its product chord") {
  RelativePresentation x = f2_rel_a();
  Diagram d = two_edge_arc(x);
  Decomposition dec = decompose_pieces(x, d);
  REQUIRE(dec.clusters.size() == 1);
  REQUIRE(dec.arcs.size() == 1);
  CHECK(dec.arcs[0].darts.size() == 2);

  ChordedCluster cc = add_chords(x, d, dec, 0, kCap);
  REQUIRE(cc.chord.size() == 1);
  CHECK(cc.chord[0] == pl(x, 0, "a a"));
  // Glued disk for the arc (a, a) is one triangle.
  CHECK(cc.chorded.area() == 3);
  CHECK(cc.chorded.faces[0].size() == 3);
  CHECK(cc.chorded.label[static_cast<size_t>(
            cc.chorded.faces[0][static_cast<size_t>(cc.chord_pos[0])])] == pl(x, 0, "a a"));
  CHECK(x.hat_trivial(boundary_word(cc.chorded)));
  // Re-standardized area is boundary length - 2.
  CHECK(cc.standardized.area() == 1);
  CHECK(boundary_word(cc.standardized) == boundary_word(cc.chorded));
  CHECK(cc.standardized.label[static_cast<size_t>(
            cc.standardized.faces[0][static_cast<size_t>(cc.chord_pos[0])])] == pl(x, 0, "a a"));
}

TEST_CASE("single-edge arcs get bigon chords with the same letter") {
  RelativePresentation x = f2_rel_a();
  Diagram d = one_edge_arc(x);
  Decomposition dec = decompose_pieces(x, d);
  REQUIRE(dec.arcs.size() == 1);
  REQUIRE(dec.arcs[0].darts.size() == 1);
  HatLetter arc_letter = d.label[static_cast<size_t>(dec.arcs[0].darts[0])];

  ChordedCluster cc = add_chords(x, d, dec, 0, kCap);
  CHECK(cc.chord[0] == arc_letter);
  CHECK(cc.chorded.area() == 2);  // triangle + glued bigon
  CHECK(cc.standardized.area() == 1);

  AugmentedPiece ap = augment_piece(x, d, dec, 1, kCap);
  CHECK(ap.augmented.area() == 2);  // pairing bigon + added parabolic bigon
  CHECK(ap.chord[0] == x.letter_inverse(arc_letter, kCap));
  CHECK(ap.augmented.label[static_cast<size_t>(
            ap.augmented.faces[0][static_cast<size_t>(ap.chord_pos[0])])] == ap.chord[0]);
  CHECK(!ap.minimization_capped);
  // Lemma hypothesis set for the augmented piece.
  Measure m = measure(ap.augmented);
  CHECK(m.is_thick);
  CHECK(m.norminf <= 6 * m.area);
}

TEST_CASE("degenerate arcs are rejected") {
  RelativePresentation x = f2_rel_a();
  // A valid diagram whose cluster has one arc of two edges labeled a and
  // a^-1: the arc's letter product is trivial, so no chord can replace it.
  Diagram d = attach_face(x, Diagram::empty(), 0, 0,
                          {pl(x, 0, "a^-1"), pl(x, 0, "a^-1"), pl(x, 0, "a a")}, para(0), kCap);
  d = attach_face(x, d, pos_of(d, 1), 1, {pl(x, 0, "a^-1 a^-1"), pl(x, 0, "a")}, para(0), kCap);
  d = attach_face(x, d, pos_of(d, 3), 1, {sl(x, "a^-1")}, pairing(0), kCap);
  d = attach_face(x, d, pos_of(d, 9), 1, {sl(x, "a")}, pairing(0), kCap);
  require_valid(x, d);

  Decomposition dec = decompose_pieces(x, d);
  REQUIRE(dec.arcs.size() == 1);
  REQUIRE(dec.arcs[0].darts.size() == 2);
  HatWord arc_letters({d.label[static_cast<size_t>(dec.arcs[0].darts[0])],
                       d.label[static_cast<size_t>(dec.arcs[0].darts[1])]});
  CHECK(x.hat_trivial(arc_letters));
  CHECK_THROWS_AS(add_chords(x, d, dec, 0, kCap), DegenerateArc);
}

TEST_CASE("reglue round-trips the chain decomposition") {
  RelativePresentation x = f2_rel_a();
  Diagram d = chain(x);
  Decomposition dec = decompose_pieces(x, d);
  REQUIRE(dec.pieces.size() == 7);
  REQUIRE(dec.arcs.size() == 6);

  std::vector<ChordedCluster> cs;
  std::vector<AugmentedPiece> ps;
  long long total = 0;
  for (size_t p = 0; p < dec.pieces.size(); ++p) {
    if (dec.pieces[p].is_cluster) {
      cs.push_back(add_chords(x, d, dec, dec.pieces[p].cluster, kCap));
      total += cs.back().chorded.area();
    } else {
      ps.push_back(augment_piece(x, d, dec, static_cast<int>(p), kCap));
      total += ps.back().augmented.area();
      Measure m = measure(ps.back().augmented);
      CHECK(m.norminf <= 6 * m.area);
      for (const Cluster& c : clusters(x, ps.back().augmented)) {
        CHECK(c.simply_connected);
        CHECK(!c.complicated);
      }
    }
  }
  // Each arc contributes a glued bigon on both sides.
  CHECK(total == d.area() + 2 * static_cast<long long>(dec.arcs.size()));

  Diagram glued = reglue(x, dec, cs, ps, false, kCap);
  CHECK(cyclic_equal(boundary_word(glued), boundary_word(d)));
  CHECK(glued.area() == total);

  Diagram reduced = reglue(x, dec, cs, ps, true, kCap);
  CHECK(cyclic_equal(boundary_word(reduced), boundary_word(d)));

  // A corrupted chord label refuses to glue.
  std::vector<ChordedCluster> bad = cs;
  int dart = bad[0].chorded.faces[0][static_cast<size_t>(bad[0].chord_pos[0])];
  bad[0].chorded.label[static_cast<size_t>(dart)] = pl(x, 0, "a a a");
  CHECK_THROWS_AS(reglue(x, dec, bad, ps, false, kCap), ParseError);

  // Parts must cover every piece.
  std::vector<AugmentedPiece> missing(ps.begin(), ps.end() - 1);
  CHECK_THROWS_AS(reglue(x, dec, cs, missing, false, kCap), ParseError);
}

TEST_CASE("reduction candidates") {
  RelativePresentation x = f2_rel_a();
  Diagram d = chain(x);
  auto cands = reduction_candidates(x, d, kCap);
  REQUIRE(cands.size() == 7);
  int from_clusters = 0;
  for (const Candidate& c : cands) {
    CHECK(x.hat_trivial(c.boundary));
    if (c.from_cluster) {
      ++from_clusters;
      // Chorded clusters are standard fans after reduction.
      CHECK(c.size.area == static_cast<long long>(c.boundary.size()) - 2);
    }
    CHECK(!c.minimization_capped);
  }
  CHECK(from_clusters == 3);

  // Without complicated clusters the diagram is its own single candidate.
  RelativePresentation z = z2_rel_all();
  Diagram sq = attach_face(z, Diagram::empty(), 0, 0,
                           {sl(z, "a"), sl(z, "b"), sl(z, "t1^-1")},
                           RelatorClass{RelatorKind::RPrimeBase, -1}, kCap);
  sq = attach_face(z, sq, pos_of(sq, 5), 1, {sl(z, "a^-1"), sl(z, "b^-1")},
                   RelatorClass{RelatorKind::RPrimeBase, -1}, kCap);
  auto single = reduction_candidates(z, sq, kCap);
  REQUIRE(single.size() == 1);
  CHECK(canonical_form(single[0].diagram) == canonical_form(sq));

  // Thin diagrams are rejected.
  Diagram thin = attach_pendant(x, one_edge_arc(x), 0, sl(x, "b"), kCap);
  CHECK_THROWS_AS(reduction_candidates(x, thin, kCap), ParseError);

  // The minimizer hook is applied to regular pieces and may cap out.
  int calls = 0;
  Minimizer cap_out = [&](const Diagram&) -> std::optional<Diagram> {
    ++calls;
    return std::nullopt;
  };
  auto capped = reduction_candidates(x, d, kCap, cap_out);
  CHECK(calls == 4);
  int capped_count = 0;
  for (const Candidate& c : capped) capped_count += c.minimization_capped ? 1 : 0;
  CHECK(capped_count == 4);
}
