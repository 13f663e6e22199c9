#include <memory>

#include "doctest.h"
#include "helpers.hpp"
#include "vankamp/cluster.hpp"

using namespace vk;
using namespace vktest;

namespace {

constexpr int kCap = 64;

// F2 relative to the two cyclic subgroups <a> and <b>.
RelativePresentation f2_rel_ab() {
  FinitePresentation p;
  p.alphabet = Alphabet::from_generators({"a", "b"});
  auto o = std::make_shared<FreeOracle>(p.alphabet);
  return RelativePresentation::build_exact(p, {{0, 1}, {2, 3}}, o);
}

RelatorClass para(int i) { return RelatorClass{RelatorKind::Parabolic, i}; }
RelatorClass pairing(int i) { return RelatorClass{RelatorKind::RPrimePairing, i}; }

int pos_of(const Diagram& d, int dart) {
  const auto& outer = d.faces[0];
  for (size_t i = 0; i < outer.size(); ++i)
    if (outer[i] == dart) return static_cast<int>(i);
  REQUIRE(false);
  return -1;
}

HatWord hw(std::initializer_list<HatLetter> ls) {
  HatWord w;
  w.letters = ls;
  return w;
}

// A parabolic annulus: two pairing bigons in the center, four parabolic
// triangles ringing them. The ring is one edge-connected cluster whose
// closed support is an annulus, so its boundary has two cycles.
Diagram annulus(const RelativePresentation& x) {
  Diagram d = attach_face(x, Diagram::empty(), 0, 0, {sl(x, "a^-1"), pl(x, 0, "a")},
                          pairing(0), kCap);
  d = attach_face(x, d, pos_of(d, 1), 1, {pl(x, 0, "a^-1")}, pairing(0), kCap);
  d = attach_face(x, d, pos_of(d, 3), 1, {pl(x, 0, "a a"), pl(x, 0, "a^-1")}, para(0), kCap);
  d = attach_face(x, d, pos_of(d, 5), 1, {pl(x, 0, "a"), pl(x, 0, "a^-1 a^-1")}, para(0), kCap);
  d = attach_face(x, d, pos_of(d, 13), 2, {pl(x, 0, "a^-1")}, para(0), kCap);
  d = attach_face(x, d, pos_of(d, 15), 2, {pl(x, 0, "a^-1 a^-1")}, para(0), kCap);
  require_valid(x, d);
  return d;
}

long long boundary_norm1(const Diagram& d, const Cluster& c) {
  long long n = 0;
  for (const auto& w : c.boundary_walks)
    for (int t : w) n += d.label[static_cast<size_t>(t)].complexity();
  return n;
}

// The size bounds that hold for every cluster of every valid diagram.
void check_cluster_bounds(const RelativePresentation& x, const Diagram& d) {
  Measure m = measure(d);
  for (const Cluster& c : clusters(x, d)) {
    long long len = c.boundary_length();
    long long area_c = static_cast<long long>(c.faces.size());
    CHECK(area_c >= len - 2);
    if (c.simply_connected) CHECK(boundary_norm1(d, c) <= 3 * m.area + m.norm1);
    if (c.simply_connected && !c.complicated) {
      long long inf = 0;
      for (int t : c.boundary_walks[0])
        inf = std::max(inf, static_cast<long long>(d.label[static_cast<size_t>(t)].complexity()));
      CHECK(inf <= len);
      CHECK(boundary_norm1(d, c) <= 2 * len);
    }
  }
}

}  // namespace

TEST_CASE("clusters group parabolic faces by shared edges") {
  RelativePresentation x = f2_rel_a();
  // Two triangles over <a> sharing the a^2 edge.
  Diagram d = attach_face(x, Diagram::empty(), 0, 0,
                          {pl(x, 0, "a"), pl(x, 0, "a"), pl(x, 0, "a^-1 a^-1")}, para(0), kCap);
  const auto& outer = d.faces[0];
  int pos = -1;
  for (size_t i = 0; i < outer.size(); ++i)
    if (d.label[static_cast<size_t>(outer[i])] == pl(x, 0, "a a")) pos = static_cast<int>(i);
  REQUIRE(pos >= 0);
  d = attach_face(x, d, pos, 1, {pl(x, 0, "a^-1"), pl(x, 0, "a^-1")}, para(0), kCap);
  require_valid(x, d);

  auto cs = clusters(x, d);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].parabolic == 0);
  CHECK(cs[0].faces.size() == 2);
  CHECK(cs[0].simply_connected);
  CHECK(cs[0].boundary_length() == 4);
  CHECK(cs[0].outer_boundary_edges == 4);
  CHECK(cs[0].complicated);
  check_cluster_bounds(x, d);
}

TEST_CASE("faces sharing only a vertex form separate clusters") {
  RelativePresentation x2 = f2_rel_ab();
  Diagram b1 = attach_face(x2, Diagram::empty(), 0, 0, {pl(x2, 0, "a"), pl(x2, 0, "a^-1")},
                           para(0), kCap);
  Diagram b2 = attach_face(x2, Diagram::empty(), 0, 0, {pl(x2, 1, "b"), pl(x2, 1, "b^-1")},
                           para(1), kCap);
  Diagram wedged = glue_diagrams(x2, b1, 0, b2, 0, 0, kCap);
  require_valid(x2, wedged);
  auto cs = clusters(x2, wedged);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0].parabolic != cs[1].parabolic);
  for (const Cluster& c : cs) {
    CHECK(c.faces.size() == 1);
    CHECK(c.simply_connected);
  }
  check_cluster_bounds(x2, wedged);

  // Same index, still no shared edge: also two clusters.
  RelativePresentation x = f2_rel_a();
  Diagram c1 = attach_face(x, Diagram::empty(), 0, 0, {pl(x, 0, "a"), pl(x, 0, "a^-1")},
                           para(0), kCap);
  Diagram w2 = glue_diagrams(x, c1, 0, c1, 0, 0, kCap);
  CHECK(clusters(x, w2).size() == 2);
}

TEST_CASE("annular cluster is not simply connected") {
  RelativePresentation x = f2_rel_a();
  Diagram d = annulus(x);
  auto cs = clusters(x, d);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].faces.size() == 4);
  CHECK(!cs[0].simply_connected);
  CHECK(cs[0].boundary_walks.size() == 2);
  CHECK(cs[0].boundary_length() == 4);
  CHECK(cs[0].outer_boundary_edges == 2);
  check_cluster_bounds(x, d);

  CHECK_THROWS_AS(refill_standard(x, d, kCap), ParseError);
  CHECK_THROWS_AS(decompose_pieces(x, d), ParseError);
}

TEST_CASE("standard filling of a triangle boundary") {
  RelativePresentation x = f2_rel_a();
  HatWord w = hw({pl(x, 0, "a"), pl(x, 0, "a"), pl(x, 0, "a^-1 a^-1")});
  Diagram d = standard_filling(x, 0, w, kCap);
  CHECK(d.area() == 1);
  CHECK(d.dart_count() == 6);
  CHECK(boundary_word(d) == w);
  Measure m = measure(d);
  CHECK(m.norminf <= norms(w).norm1);
  check_cluster_bounds(x, d);
}

TEST_CASE("standard filling fan and interior labels") {
  RelativePresentation x = f2_rel_a();
  HatWord w = hw({pl(x, 0, "a"), pl(x, 0, "a"), pl(x, 0, "a"), pl(x, 0, "a^-1 a^-1 a^-1")});
  Diagram d = standard_filling(x, 0, w, kCap);
  CHECK(d.area() == 2);
  CHECK(boundary_word(d) == w);
  // One interior edge, labeled by the canonical geodesic of a*a.
  CHECK(d.edge_count() == 5);
  std::vector<char> on_outer(static_cast<size_t>(d.dart_count()), 0);
  for (int t : d.faces[0]) on_outer[static_cast<size_t>(t)] = 1;
  int interior = 0;
  for (int e = 0; e < d.edge_count(); ++e) {
    if (on_outer[static_cast<size_t>(2 * e)] || on_outer[static_cast<size_t>(2 * e + 1)]) continue;
    ++interior;
    HatLetter l = d.label[static_cast<size_t>(2 * e)];
    CHECK(l.complexity() == 2);
    CHECK((l == pl(x, 0, "a a") || l == pl(x, 0, "a^-1 a^-1")));
  }
  CHECK(interior == 1);
  // All vertices on the boundary: a fan over n boundary vertices.
  CHECK(vertex_count(d.sigma()) == 4);
  check_cluster_bounds(x, d);

  // Longer boundary, mixed complexities.
  HatWord w2 = hw({pl(x, 0, "a a a"), pl(x, 0, "a^-1"), pl(x, 0, "a^-1"), pl(x, 0, "a^-1")});
  Diagram d2 = standard_filling(x, 0, w2, kCap);
  CHECK(d2.area() == 2);
  CHECK(boundary_word(d2) == w2);
  CHECK(measure(d2).norminf <= norms(w2).norm1);
}

TEST_CASE("standard filling rejects bad boundaries") {
  RelativePresentation x = f2_rel_a();
  // Too short, wrong letter kinds, nontrivial product.
  CHECK_THROWS_AS(standard_filling(x, 0, hw({pl(x, 0, "a"), pl(x, 0, "a^-1")}), kCap), ParseError);
  CHECK_THROWS_AS(
      standard_filling(x, 0, hw({pl(x, 0, "a"), sl(x, "a"), pl(x, 0, "a^-1 a^-1")}), kCap),
      ParseError);
  CHECK_THROWS_AS(standard_filling(x, 0, hw({pl(x, 0, "a"), pl(x, 0, "a"), pl(x, 0, "a^-1")}), kCap),
                  ParseError);
  RelativePresentation x2 = f2_rel_ab();
  CHECK_THROWS_AS(
      standard_filling(x2, 0, hw({pl(x2, 0, "a"), pl(x2, 1, "b"), pl(x2, 0, "a^-1")}), kCap),
      ParseError);

  // A trivial proper prefix product would need an identity interior letter.
  try {
    standard_filling(x, 0, hw({pl(x, 0, "a"), pl(x, 0, "a^-1"), pl(x, 0, "a"), pl(x, 0, "a^-1")}),
                     kCap);
    CHECK(false);
  } catch (const DegeneratePrefix& e) {
    CHECK(e.prefix_length == 2);
  }
}

TEST_CASE("refill_standard is idempotent and reduces redundant fillings") {
  RelativePresentation x = f2_rel_a();
  HatWord w = hw({pl(x, 0, "a"), pl(x, 0, "a"), pl(x, 0, "a"), pl(x, 0, "a^-1 a^-1 a^-1")});
  Diagram std2 = standard_filling(x, 0, w, kCap);
  CHECK(canonical_form(refill_standard(x, std2, kCap)) == canonical_form(std2));

  // Pad the standard filling with two parabolic bigons glued to boundary
  // edges; the boundary word is unchanged but the area grows to 4.
  Diagram fat = std2;
  for (int round = 0; round < 2; ++round) {
    const auto& outer = fat.faces[0];
    int pos = -1;
    for (size_t i = 0; i < outer.size(); ++i)
      if (fat.label[static_cast<size_t>(outer[i])] == pl(x, 0, "a")) pos = static_cast<int>(i);
    REQUIRE(pos >= 0);
    fat = attach_face(x, fat, pos, 1, {pl(x, 0, "a^-1")}, para(0), kCap);
  }
  require_valid(x, fat);
  CHECK(fat.area() == 4);
  CHECK(boundary_word(fat) == w);
  check_cluster_bounds(x, fat);

  Diagram slim = refill_standard(x, fat, kCap);
  CHECK(slim.area() == 2);
  CHECK(boundary_word(slim) == w);
  // The refilled cluster is the fan of some rotation of the boundary word.
  bool fan = false;
  for (size_t r = 0; r < w.size() && !fan; ++r) {
    HatWord rot;
    for (size_t k = 0; k < w.size(); ++k) rot.letters.push_back(w.letters[(r + k) % w.size()]);
    fan = canonical_form(slim) == canonical_form(standard_filling(x, 0, rot, kCap));
  }
  CHECK(fan);
  CHECK(canonical_form(refill_standard(x, slim, kCap)) == canonical_form(slim));

  // Boundary length 2 clusters stay single bigons.
  Diagram bigon = attach_face(x, Diagram::empty(), 0, 0, {pl(x, 0, "a"), pl(x, 0, "a^-1")},
                              para(0), kCap);
  Diagram fatbigon = attach_face(x, bigon, pos_of(bigon, 3), 1, {pl(x, 0, "a^-1")}, para(0), kCap);
  require_valid(x, fatbigon);
  CHECK(fatbigon.area() == 2);
  Diagram rb = refill_standard(x, fatbigon, kCap);
  CHECK(rb.area() == 1);
  CHECK(canonical_form(rb) == canonical_form(bigon));
}

TEST_CASE("refill_standard leaves diagrams without parabolic faces alone") {
  RelativePresentation z = z2_rel_all();
  Diagram d = attach_face(z, Diagram::empty(), 0, 0,
                          {sl(z, "a"), sl(z, "b"), sl(z, "t1^-1")},
                          RelatorClass{RelatorKind::RPrimeBase, -1}, kCap);
  CHECK(clusters(z, d).empty());
  CHECK(canonical_form(refill_standard(z, d, kCap)) == canonical_form(d));
}

TEST_CASE("replace_disk checks the hole boundary") {
  RelativePresentation x = f2_rel_a();
  HatWord w = hw({pl(x, 0, "a"), pl(x, 0, "a"), pl(x, 0, "a"), pl(x, 0, "a^-1 a^-1 a^-1")});
  Diagram d = standard_filling(x, 0, w, kCap);
  // Replacing all faces by a filling of the same boundary is a no-op up to
  // isomorphism; a filling of a different word is rejected.
  Diagram same = replace_disk(x, d, {1, 2}, d, kCap);
  CHECK(canonical_form(same) == canonical_form(d));
  HatWord other = hw({pl(x, 0, "a a"), pl(x, 0, "a"), pl(x, 0, "a"), pl(x, 0, "a^-1 a^-1 a^-1 a^-1")});
  Diagram wrong = standard_filling(x, 0, other, kCap);
  CHECK_THROWS_AS(replace_disk(x, d, {1, 2}, wrong, kCap), ParseError);
  CHECK_THROWS_AS(replace_disk(x, d, {}, d, kCap), ParseError);
}

TEST_CASE("decompose_pieces with no complicated cluster") {
  RelativePresentation z = z2_rel_all();
  Diagram d = attach_face(z, Diagram::empty(), 0, 0,
                          {sl(z, "a"), sl(z, "b"), sl(z, "t1^-1")},
                          RelatorClass{RelatorKind::RPrimeBase, -1}, kCap);
  d = attach_face(z, d, pos_of(d, 5), 1, {sl(z, "a^-1"), sl(z, "b^-1")},
                  RelatorClass{RelatorKind::RPrimeBase, -1}, kCap);
  require_valid(z, d);
  Decomposition dec = decompose_pieces(z, d);
  CHECK(dec.clusters.empty());
  REQUIRE(dec.pieces.size() == 1);
  CHECK(dec.arcs.empty());
  CHECK(dec.pieces[0].faces.size() == 2);
  CHECK(!dec.pieces[0].is_cluster);
}

TEST_CASE("decompose_pieces leaf cluster degree is strict") {
  RelativePresentation x = f2_rel_a();
  // One parabolic triangle, one pairing bigon on a complexity-1 edge. The
  // cluster meets the diagram boundary in 2 edges but has only one arc.
  Diagram d = attach_face(x, Diagram::empty(), 0, 0,
                          {pl(x, 0, "a"), pl(x, 0, "a"), pl(x, 0, "a^-1 a^-1")}, para(0), kCap);
  d = attach_face(x, d, pos_of(d, 1), 1, {sl(x, "a")}, pairing(0), kCap);
  require_valid(x, d);
  auto cs = clusters(x, d);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].complicated);
  CHECK(cs[0].outer_boundary_edges == 2);

  Decomposition dec = decompose_pieces(x, d);
  REQUIRE(dec.pieces.size() == 2);
  REQUIRE(dec.arcs.size() == 1);
  CHECK(dec.pieces[0].is_cluster);
  CHECK(!dec.pieces[1].is_cluster);
  CHECK(dec.arcs[0].darts.size() == 1);
  CHECK(dec.incidence[0] == std::make_pair(0, 1));
}

TEST_CASE("decompose_pieces on a chain of clusters and regular pieces") {
  RelativePresentation x = f2_rel_a();
  // Chain R1 - C1 - R2 - C2 - R3 - C3 - R4: pairing bigons and double
  // bigons alternating with two-triangle clusters, built left to right.
  Diagram d = attach_face(x, Diagram::empty(), 0, 0, {sl(x, "a^-1"), pl(x, 0, "a")},
                          pairing(0), kCap);
  auto two_triangles = [&](int at) {
    int n0 = d.dart_count();
    d = attach_face(x, d, pos_of(d, at), 1, {pl(x, 0, "a a"), pl(x, 0, "a^-1")}, para(0), kCap);
    d = attach_face(x, d, pos_of(d, n0 + 3), 1, {pl(x, 0, "a"), pl(x, 0, "a^-1 a^-1")}, para(0),
                    kCap);
    return d.dart_count() - 3;  // dart labeled par:a^-1 left on the outer walk
  };
  auto double_bigon = [&](int at) {
    int n0 = d.dart_count();
    d = attach_face(x, d, pos_of(d, at), 1, {sl(x, "a")}, pairing(0), kCap);
    d = attach_face(x, d, pos_of(d, n0 + 1), 1, {pl(x, 0, "a")}, pairing(0), kCap);
    return d.dart_count() - 1;  // dart labeled par:a^-1 left on the outer walk
  };
  int at = two_triangles(3);
  at = double_bigon(at);
  at = two_triangles(at);
  at = double_bigon(at);
  at = two_triangles(at);
  d = attach_face(x, d, pos_of(d, at), 1, {sl(x, "a")}, pairing(0), kCap);
  require_valid(x, d);

  auto cs = clusters(x, d);
  REQUIRE(cs.size() == 3);
  for (const Cluster& c : cs) {
    CHECK(c.faces.size() == 2);
    CHECK(c.complicated);
    CHECK(c.outer_boundary_edges == 2);
  }
  check_cluster_bounds(x, d);

  Decomposition dec = decompose_pieces(x, d);
  CHECK(dec.pieces.size() == 7);
  CHECK(dec.arcs.size() == 6);
  int cluster_pieces = 0;
  for (const Piece& p : dec.pieces) cluster_pieces += p.is_cluster ? 1 : 0;
  CHECK(cluster_pieces == 3);
  // Path degrees: every cluster vertex has degree 2, the end regular
  // pieces degree 1, the middle ones degree 2.
  std::vector<int> degree(dec.pieces.size(), 0);
  for (auto& [a, b] : dec.incidence) {
    ++degree[static_cast<size_t>(a)];
    ++degree[static_cast<size_t>(b)];
  }
  for (size_t p = 0; p < dec.pieces.size(); ++p)
    CHECK(degree[p] == (dec.pieces[p].is_cluster ? 2 : dec.pieces[p].faces.size() == 1 ? 1 : 2));
}
