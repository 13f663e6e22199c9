#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "vankamp/diagram.hpp"

using namespace vk;
using namespace vktest;

namespace {

constexpr int kCap = 64;

Diagram pairing_bigon(const RelativePresentation& x) {
  // Face reads a^-1 . par1:a (a pairing relator); outer reads par1:a^-1 . a.
  return attach_face(x, Diagram::empty(), 0, 0, {sl(x, "a^-1"), pl(x, 0, "a")},
                     RelatorClass{RelatorKind::RPrimePairing, 0}, kCap);
}

Diagram z2_square(const RelativePresentation& z) {
  // Two triangles of the triangularized commutator sharing the t edge.
  Diagram d = attach_face(z, Diagram::empty(), 0, 0,
                          {sl(z, "a"), sl(z, "b"), sl(z, "t1^-1")},
                          RelatorClass{RelatorKind::RPrimeBase, -1}, kCap);
  // Outer walk is [5,3,1] with labels t1, b^-1, a^-1; glue along the t1 dart.
  int pos = 0;
  while (d.faces[0][static_cast<size_t>(pos)] != 5) ++pos;
  return attach_face(z, d, pos, 1, {sl(z, "a^-1"), sl(z, "b^-1")},
                     RelatorClass{RelatorKind::RPrimeBase, -1}, kCap);
}

}  // namespace

TEST_CASE("empty diagram and pendant edge") {
  RelativePresentation x = f2_rel_a();
  Diagram e = Diagram::empty();
  CHECK(validate(x, e).empty());
  CHECK(boundary_word(e).empty());
  Measure m = measure(e);
  CHECK(m.area == 0);
  CHECK(m.norm1 == 0);

  Diagram d = attach_pendant(x, e, 0, sl(x, "a"), kCap);
  CHECK(validate(x, d).empty());
  HatWord b = boundary_word(d);
  REQUIRE(b.size() == 2);
  CHECK(b.letters[0] == sl(x, "a"));
  CHECK(b.letters[1] == sl(x, "a^-1"));
  m = measure(d);
  CHECK(m.area == 0);
  CHECK(m.norm1 == 1);
  CHECK(m.norminf == 1);
  CHECK(!m.is_thick);
  CHECK(thick_components(d).empty());
}

TEST_CASE("pairing bigon") {
  RelativePresentation x = f2_rel_a();
  Diagram d = pairing_bigon(x);
  CHECK(validate(x, d).empty());
  Measure m = measure(d);
  CHECK(m.area == 1);
  CHECK(m.norm1 == 2);
  CHECK(m.norminf == 1);
  CHECK(m.is_thick);

  // Rebased at the S-edge dart the boundary reads a . par1:a^-1.
  Diagram r = rebase(d, 1);
  HatWord b = boundary_word(r);
  REQUIRE(b.size() == 2);
  CHECK(b.letters[0] == sl(x, "a"));
  CHECK(b.letters[1] == pl(x, 0, "a^-1"));
  CHECK(x.hat_trivial(b));

  // Measure is rebase invariant; boundary words differ by rotation.
  Measure mr = measure(r);
  CHECK(mr.area == m.area);
  CHECK(mr.norm1 == m.norm1);
  CHECK(canonical_form(r) == canonical_form(d));

  auto comps = thick_components(d);
  REQUIRE(comps.size() == 1);
  CHECK(canonical_form(comps[0]) == canonical_form(d));
}

TEST_CASE("validate catches mislabeled diagrams") {
  RelativePresentation x = f2_rel_a();
  Diagram d = pairing_bigon(x);

  Diagram wrong_tag = d;
  wrong_tag.tags[1] = RelatorClass{RelatorKind::Parabolic, 0};
  CHECK(!validate(x, wrong_tag).empty());

  Diagram broken_involution = d;
  broken_involution.label[1] = sl(x, "b");
  CHECK(!validate(x, broken_involution).empty());

  Diagram untagged_face = d;
  untagged_face.tags[1] = RelatorClass{};
  CHECK(!validate(x, untagged_face).empty());

  Diagram tagged_outer = d;
  tagged_outer.tags[0] = RelatorClass{RelatorKind::RPrimeBase, -1};
  CHECK(!validate(x, tagged_outer).empty());

  Diagram noncanonical = d;
  // A parabolic letter whose stored word is not the canonical geodesic.
  noncanonical.label[2] = HatLetter::p_letter(0, wparse(x.alphabet(), "a a a^-1"));
  CHECK(!validate(x, noncanonical).empty());

  Diagram bad_partition = d;
  bad_partition.faces[0] = {3};
  CHECK(!validate(x, bad_partition).empty());
}

TEST_CASE("two-triangle commutator square") {
  RelativePresentation z = z2_rel_all();
  Diagram d = z2_square(z);
  CHECK(validate(z, d).empty());
  Measure m = measure(d);
  CHECK(m.area == 2);
  CHECK(m.norm1 == 5);
  CHECK(m.norminf == 1);
  CHECK(m.is_thick);

  HatWord b = boundary_word(d);
  CHECK(b.size() == 4);
  Word expanded = z.expand(b);
  CHECK(z.oracle().is_trivial(expanded));
  // The boundary is a rotation of the commutator or its inverse.
  Word fr = free_reduce(z.alphabet(), expanded);
  CHECK(fr.size() == 4);
  for (Sym s : fr.syms) CHECK(z.alphabet().name(s)[0] != 't');

  // Dart/face incidence bookkeeping: outer length + bounded lengths = 2E.
  size_t incidences = 0;
  for (const auto& f : d.faces) incidences += f.size();
  CHECK(incidences == static_cast<size_t>(d.dart_count()));

  auto comps = thick_components(d);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].area() == 2);
}

TEST_CASE("glue_diagrams reproduces the square") {
  RelativePresentation z = z2_rel_all();
  Diagram t1 = attach_face(z, Diagram::empty(), 0, 0,
                           {sl(z, "a"), sl(z, "b"), sl(z, "t1^-1")},
                           RelatorClass{RelatorKind::RPrimeBase, -1}, kCap);
  Diagram t2 = attach_face(z, Diagram::empty(), 0, 0,
                           {sl(z, "t1"), sl(z, "a^-1"), sl(z, "b^-1")},
                           RelatorClass{RelatorKind::RPrimeBase, -1}, kCap);
  // t1's outer has a dart labeled t1; t2's outer has one labeled t1^-1.
  auto find_label = [&](const Diagram& d, const HatLetter& l) {
    const auto& outer = d.faces[0];
    for (size_t i = 0; i < outer.size(); ++i)
      if (d.label[static_cast<size_t>(outer[i])] == l) return static_cast<int>(i);
    REQUIRE(false);
    return -1;
  };
  int pa = find_label(t1, sl(z, "t1"));
  int pb = find_label(t2, sl(z, "t1^-1"));
  Diagram glued = glue_diagrams(z, t1, pa, t2, pb, 1, kCap);
  CHECK(validate(z, glued).empty());
  CHECK(canonical_form(glued) == canonical_form(z2_square(z)));

  // Wrong labels refuse to glue.
  CHECK_THROWS_AS(glue_diagrams(z, t1, find_label(t1, sl(z, "b^-1")), t2, pb, 1, kCap),
                  ParseError);
}

TEST_CASE("wedge gluing and multiple thick components") {
  RelativePresentation x = f2_rel_a();
  Diagram b1 = pairing_bigon(x);
  Diagram b2 = pairing_bigon(x);
  Diagram wedged = glue_diagrams(x, b1, 0, b2, 0, 0, kCap);
  CHECK(validate(x, wedged).empty());
  CHECK(measure(wedged).area == 2);
  CHECK(measure(wedged).is_thick);
  // Wedged bigons share a vertex, so the closed thick part is connected.
  auto comps = thick_components(wedged);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].area() == 2);

  // Joined by a pendant path instead: still two area-1 components.
  Diagram path = attach_pendant(x, b1, 0, sl(x, "b"), kCap);
  int corner = 0;
  const auto& outer = path.faces[0];
  for (size_t i = 0; i < outer.size(); ++i)
    if (path.label[static_cast<size_t>(outer[i])] == sl(x, "b^-1")) corner = static_cast<int>(i);
  Diagram joined = glue_diagrams(x, path, corner, b2, 0, 0, kCap);
  CHECK(validate(x, joined).empty());
  CHECK(!measure(joined).is_thick);
  CHECK(thick_components(joined).size() == 2);
}

TEST_CASE("canonical form distinguishes labels and tags") {
  RelativePresentation x = f2_rel_a();
  Diagram bigon = pairing_bigon(x);
  // A parabolic bigon par1:a . par1:a^-1 has the same shape, different data.
  Diagram pb = attach_face(x, Diagram::empty(), 0, 0, {pl(x, 0, "a"), pl(x, 0, "a^-1")},
                           RelatorClass{RelatorKind::Parabolic, 0}, kCap);
  CHECK(validate(x, pb).empty());
  CHECK(canonical_form(pb) != canonical_form(bigon));
  CHECK(canonical_form(Diagram::empty()).empty());
}

TEST_CASE("boundary soundness on random attachments") {
  RelativePresentation z = z2_rel_all();
  Diagram d = z2_square(z);
  // Grow by gluing more squares along boundary edges labeled a or b.
  for (int round = 0; round < 3; ++round) {
    const auto& outer = d.faces[0];
    REQUIRE(!outer.empty());
    int pos = static_cast<int>(round % outer.size());
    const HatLetter& at = d.label[static_cast<size_t>(outer[static_cast<size_t>(pos)])];
    // The triangle (a,b,t1^-1) has outer letters {a^-1, b^-1, t1}; its
    // mirror (a^-1,t1,b^-1) has {a, b, t1^-1}.
    bool positive = at == sl(z, "a") || at == sl(z, "b") || at == sl(z, "t1^-1");
    // Glue the triangle whose outer boundary contains the inverse letter.
    Diagram tri = positive
                      ? attach_face(z, Diagram::empty(), 0, 0,
                                    {sl(z, "a"), sl(z, "b"), sl(z, "t1^-1")},
                                    RelatorClass{RelatorKind::RPrimeBase, -1}, kCap)
                      : attach_face(z, Diagram::empty(), 0, 0,
                                    {sl(z, "a^-1"), sl(z, "t1"), sl(z, "b^-1")},
                                    RelatorClass{RelatorKind::RPrimeBase, -1}, kCap);
    const auto& treplace = tri.faces[0];
    int tpos = -1;
    HatLetter want = z.letter_inverse(at, kCap);
    for (size_t i = 0; i < treplace.size(); ++i)
      if (tri.label[static_cast<size_t>(treplace[i])] == want) tpos = static_cast<int>(i);
    REQUIRE(tpos >= 0);
    d = glue_diagrams(z, d, pos, tri, tpos, 1, kCap);
    CHECK(validate(z, d).empty());
    CHECK(z.oracle().is_trivial(z.expand(boundary_word(d))));
  }
  CHECK(d.area() == 5);
}
