#include "doctest.h"
#include "bruteforce.hpp"
#include "helpers.hpp"
#include "vankamp/isoperimetry.hpp"

using namespace vk;
using namespace vktest;

namespace {

constexpr int kCap = 64;

HatWord hw(std::initializer_list<HatLetter> ls) { return HatWord(std::vector<HatLetter>(ls)); }

std::vector<HatLetter> universe_c2(const RelativePresentation& x) {
  return {sl(x, "a"),        sl(x, "a^-1"),     sl(x, "b"),          sl(x, "b^-1"),
          pl(x, 0, "a"),     pl(x, 0, "a^-1"),  pl(x, 0, "a a"),     pl(x, 0, "a^-1 a^-1")};
}

EnumerationCaps caps_of(long long area, long long cx, long long blen) {
  EnumerationCaps c;
  c.max_area = area;
  c.max_complexity = cx;
  c.max_boundary_length = blen;
  c.ball_radius_cap = kCap;
  return c;
}

}  // namespace

TEST_CASE("constant formulas") {
  PaperConstants c = paper_constants(BigInt(1000000));
  CHECK(c.Kprime == BigInt("360000000000000000"));
  CHECK(c.rho == BigInt("1" + std::string(56, '0')));
  CHECK(c.B == BigInt("2" + std::string(18, '0')));
  CHECK(c.area_cap == BigInt(240000000));
  CHECK(c.proper_bound == BigInt(12000000));

  PaperConstants u = paper_constants(BigInt(1));
  CHECK(u.Kprime == 360000);
  CHECK(u.rho == BigInt("1" + std::string(26, '0')));
  CHECK(u.B == 2000000);
  CHECK(u.area_cap == 240);
  CHECK(u.proper_bound == 12);

  CHECK_THROWS_AS(paper_constants(BigInt(0)), ParseError);
  CHECK_THROWS_AS(ConstantPack::paper(BigInt(999999)), ParseError);
  ConstantPack p = ConstantPack::paper(BigInt(1000000));
  CHECK(p.paper_faithful);
  CHECK(p.rho >= 3 * p.area_cap);
}

TEST_CASE("exact ratio comparison") {
  // K = 360000 makes sqrt(K)/600 exactly 1.
  ConstantPack p = ConstantPack::scaled(BigInt(360000), BigInt(2), BigInt(2), BigInt(3));
  CHECK(p.ratio_ok(4, 4));
  CHECK(!p.ratio_ok(5, 4));
  CHECK(p.ratio_threshold(7) == 7);

  // K = 2: the bound is sqrt(2)/600, irrational, so squaring must decide.
  ConstantPack q = ConstantPack::scaled(BigInt(2), BigInt(1), BigInt(1), BigInt(1));
  CHECK(q.ratio_ok(1, 425));   // 360000 <= 2 * 425^2 = 361250
  CHECK(!q.ratio_ok(1, 424));  // 360000 >  2 * 424^2 = 359552
  CHECK(q.ratio_threshold(425) == 1);
  CHECK(q.ratio_threshold(424) == 0);

  RelativePresentation x = f2_rel_a();
  HatWord w = hw({sl(x, "a"), sl(x, "a"), pl(x, 0, "a^-1 a^-1")});
  CHECK(p.min_area_complexity_bound(w) == 720 * 360000 + 4);
}

TEST_CASE("one-cell enumeration at complexity 1") {
  RelativePresentation x = f2_rel_a();
  std::vector<Diagram> got = all_thick_diagrams(x, caps_of(1, 1, 6));
  REQUIRE(got.size() == 3);

  auto one_face = [&](std::vector<HatLetter> w) {
    return canonical_form(attach_face(x, Diagram::empty(), 0, 0, w,
                                      x.classify_relator(HatWord(w)), kCap));
  };
  std::set<std::vector<long long>> expect = {
      one_face({sl(x, "a"), pl(x, 0, "a^-1")}),
      one_face({sl(x, "a^-1"), pl(x, 0, "a")}),
      one_face({pl(x, 0, "a"), pl(x, 0, "a^-1")}),
  };
  std::set<std::vector<long long>> have;
  for (const Diagram& d : got) have.insert(canonical_form(d));
  CHECK(have == expect);

  CHECK(all_thick_diagrams(x, caps_of(0, 1, 6)).empty());

  // determinism: a rerun yields the identical sequence
  std::vector<Diagram> again = all_thick_diagrams(x, caps_of(1, 1, 6));
  REQUIRE(again.size() == got.size());
  for (size_t i = 0; i < got.size(); ++i)
    CHECK(canonical_form(again[i]) == canonical_form(got[i]));

  CHECK_THROWS_AS(all_thick_diagrams(x, caps_of(1, 100, 6)), Overflow);
}

TEST_CASE("enumeration matches the brute-force generator") {
  RelativePresentation x = f2_rel_a();
  std::vector<Diagram> got = all_thick_diagrams(x, caps_of(2, 2, 6));
  std::set<std::vector<long long>> have;
  for (const Diagram& d : got) {
    Measure m = measure(d);
    CHECK(m.is_thick);
    CHECK(m.norminf <= 2);
    have.insert(canonical_form(d));
  }
  CHECK(have.size() == got.size());

  BruteForce bf(x, universe_c2(x), 2, 6, kCap);
  CHECK(have == bf.canon());
}

TEST_CASE("layered enumeration resumes from its state") {
  RelativePresentation x = f2_rel_a();
  EnumerationCaps caps = caps_of(2, 2, 6);
  std::vector<Diagram> whole = all_thick_diagrams(x, caps);

  EnumerationState st = EnumerationState::start();
  std::vector<Diagram> pieced;
  auto sink = [&](const Diagram& d) {
    pieced.push_back(d);
    return true;
  };
  while (enumerate_layer(x, caps, st, sink)) {
  }
  REQUIRE(pieced.size() == whole.size());
  for (size_t i = 0; i < whole.size(); ++i)
    CHECK(canonical_form(pieced[i]) == canonical_form(whole[i]));
  CHECK(st.next_area == 3);
}

TEST_CASE("min_area on filling words") {
  RelativePresentation x = f2_rel_a();
  EnumerationCaps caps = caps_of(4, 2, 6);

  MinAreaResult bigon = min_area(x, hw({sl(x, "a"), pl(x, 0, "a^-1")}), caps, kCap);
  CHECK(!bigon.exceeds_caps);
  CHECK(bigon.area == 1);
  CHECK(boundary_word(*bigon.witness) == hw({sl(x, "a"), pl(x, 0, "a^-1")}));

  HatWord wide = hw({sl(x, "a"), sl(x, "a"), pl(x, 0, "a^-1 a^-1")});
  MinAreaResult three = min_area(x, wide, caps, kCap);
  CHECK(three.area == 3);
  CHECK(boundary_word(*three.witness) == wide);
  Measure m = measure(*three.witness);
  CHECK(m.norminf <= 3 * three.area + norms(wide).norm1);

  MinAreaResult zero = min_area(x, hw({sl(x, "a"), sl(x, "a^-1")}), caps, kCap);
  CHECK(zero.area == 0);
  CHECK(boundary_word(*zero.witness) == hw({sl(x, "a"), sl(x, "a^-1")}));

  MinAreaResult empty = min_area(x, HatWord{}, caps, kCap);
  CHECK(empty.area == 0);

  CHECK_THROWS_AS(min_area(x, hw({sl(x, "a")}), caps, kCap), NotTrivialError);
  CHECK(min_area(x, wide, caps_of(2, 2, 6), kCap).exceeds_caps);
}

TEST_CASE("min_area handles trees between thick components") {
  RelativePresentation x = f2_rel_a();
  EnumerationCaps caps = caps_of(4, 2, 8);

  // a tree edge wrapping a thick loop
  HatWord wrap = hw({sl(x, "b"), sl(x, "a"), pl(x, 0, "a^-1"), sl(x, "b^-1")});
  MinAreaResult r = min_area(x, wrap, caps, kCap);
  CHECK(r.area == 1);
  CHECK(boundary_word(*r.witness) == wrap);

  // a freely cancelling detour between the letters of a thick loop
  HatWord gap = hw({sl(x, "a"), sl(x, "b"), sl(x, "b^-1"), pl(x, 0, "a^-1")});
  r = min_area(x, gap, caps, kCap);
  CHECK(r.area == 1);
  CHECK(boundary_word(*r.witness) == gap);

  // two loops wedged at the base vertex
  HatWord wedge = hw({sl(x, "a"), pl(x, 0, "a^-1"), sl(x, "a^-1"), pl(x, 0, "a")});
  r = min_area(x, wedge, caps, kCap);
  CHECK(r.area == 2);
  CHECK(boundary_word(*r.witness) == wedge);

  // a pair of mutually inverse letters always folds into a tree edge, even
  // when both letters are long parabolic geodesics
  HatWord fold = hw({pl(x, 0, "a a"), pl(x, 0, "a^-1 a^-1")});
  r = min_area(x, fold, caps, kCap);
  CHECK(r.area == 0);
  CHECK(boundary_word(*r.witness) == fold);

  // a cancelling detour ahead of two thick loops
  HatWord ends = hw({sl(x, "b"), sl(x, "b^-1"), sl(x, "a"), pl(x, 0, "a^-1"),
                     sl(x, "a"), pl(x, 0, "a^-1")});
  r = min_area(x, ends, caps, kCap);
  CHECK(r.area == 2);
  CHECK(boundary_word(*r.witness) == ends);
  require_valid(x, *r.witness);
}

TEST_CASE("minimality against the enumerated corpus") {
  RelativePresentation x = f2_rel_a();
  EnumerationCaps caps = caps_of(2, 2, 6);
  for (const Diagram& d : all_thick_diagrams(x, caps)) {
    HatWord w = boundary_word(d);
    MinAreaResult r = min_area(x, w, caps, kCap);
    REQUIRE(!r.exceeds_caps);
    CHECK(r.area <= d.area());
    CHECK(boundary_word(*r.witness) == w);
    CHECK(measure(*r.witness).norminf <= 3 * r.area + norms(w).norm1);
  }
}

TEST_CASE("area minimizer plugs into surgery") {
  RelativePresentation x = f2_rel_a();
  // a pairing bigon with a redundant parabolic bigon stacked on its p-edge
  Diagram fat = attach_face(x, Diagram::empty(), 0, 0, {sl(x, "a"), pl(x, 0, "a^-1")},
                            RelatorClass{RelatorKind::RPrimePairing, 0}, kCap);
  fat = attach_face(x, fat, 1, 1, {pl(x, 0, "a^-1")},
                    RelatorClass{RelatorKind::Parabolic, 0}, kCap);
  require_valid(x, fat);
  REQUIRE(fat.area() == 2);

  Minimizer m = area_minimizer(x, caps_of(2, 2, 6), kCap);
  auto slim = m(fat);
  REQUIRE(slim.has_value());
  CHECK(slim->area() == 1);
  CHECK(boundary_word(*slim) == boundary_word(fat));

  Minimizer tight = area_minimizer(x, caps_of(0, 2, 6), kCap);
  CHECK(!tight(fat).has_value());
}

TEST_CASE("check_round passes on the free group") {
  RelativePresentation x = f2_rel_a();
  ConstantPack pack = ConstantPack::scaled(BigInt(360000), BigInt(2), BigInt(2), BigInt(3));
  RoundResult rr = check_round(x, pack, -1, kCap);
  CHECK(rr.pass);
  CHECK(rr.words_checked > 0);

  // caps admitting no diagram: vacuous pass
  ConstantPack none = ConstantPack::scaled(BigInt(360000), BigInt(2), BigInt(0), BigInt(3));
  CHECK(check_round(x, none, -1, kCap).pass);

  CHECK_THROWS_AS(check_round(x, pack, 0, kCap), BudgetExhausted);
}

TEST_CASE("check_round fails on the abelian group") {
  RelativePresentation z = z2_rel_a();
  // sqrt(K)/600 = 0.1: even a single triangle (area 1, length 3) fails.
  ConstantPack pack = ConstantPack::scaled(BigInt(3600), BigInt(1), BigInt(1), BigInt(1));
  RoundResult rr = check_round(z, pack, -1, kCap);
  CHECK(!rr.pass);
  CHECK(rr.witness_area == 1);
  CHECK(rr.witness_length == 3);
  CHECK(z.hat_trivial(rr.witness));

  // monotonicity: enlarging the caps cannot turn the failure into a pass
  ConstantPack bigger = ConstantPack::scaled(BigInt(3600), BigInt(1), BigInt(2), BigInt(1));
  CHECK(!check_round(z, bigger, -1, kCap).pass);
}

TEST_CASE("parabolic presentations") {
  RelativePresentation x = f2_rel_a();
  FinitePresentation free_z = parabolic_presentation(x, 0, 6);
  CHECK(free_z.alphabet.size() == 2);  // a, a^-1
  CHECK(free_z.relators.empty());

  RelativePresentation z = z2_rel_all();
  FinitePresentation zz = parabolic_presentation(z, 0, 4);
  Word comm = wparse(z.alphabet(), "a b a^-1 b^-1");
  Word key = std::min(min_rotation(comm), min_rotation(word_inverse(z.alphabet(), comm)));
  bool found = false;
  for (const Word& r : zz.relators) {
    Word named;
    for (Sym s : r.syms) named.syms.push_back(*z.alphabet().find(zz.alphabet.name(s)));
    found = found || min_rotation(named) == key ||
            min_rotation(word_inverse(z.alphabet(), named)) == key;
  }
  CHECK(found);

  CHECK(parabolic_presentation(z, 0, 0).relators.empty());
}

TEST_CASE("properness verdicts") {
  RelativePresentation x = f2_rel_a();
  ConstantPack pack = ConstantPack::scaled(BigInt(1), BigInt(1), BigInt(1), BigInt(3));
  PropernessResult pr = properness(x, 0, pack, kCap);
  CHECK(pr.proper);  // b has no equal word over <a>

  RelativePresentation z = z2_rel_all();
  PropernessResult all = properness(z, 0, pack, kCap);
  CHECK(!all.proper);
  CHECK(all.absorbs.size() == static_cast<size_t>(z.alphabet().size()));
  // the subgroup is generated by {a, b}, so those syms absorb via themselves
  // while t1 = ab only has witnesses of length 2
  for (const Absorption& ab : all.absorbs) {
    CHECK(ab.a.size() <= 2);
    CHECK(z.oracle().equal(Word({ab.s}), ab.a));
  }

  ConstantPack deep = ConstantPack::scaled(BigInt(1), BigInt(1), BigInt(1), BigInt(100));
  CHECK_THROWS_AS(properness(x, 0, deep, 5), Overflow);
}

TEST_CASE("detect terminates on the free group") {
  RelativePresentation x = f2_rel_a();
  ConstantPack pack = ConstantPack::scaled(BigInt(360000), BigInt(2), BigInt(2), BigInt(3));
  DetectionBudget budget;
  budget.max_rounds = 2;
  budget.relator_length_cap = 6;
  DetectionReport rep = detect(x, pack, budget);
  CHECK(rep.terminated);
  CHECK(rep.K == 360000);
  CHECK(rep.rounds_run == 1);
  REQUIRE(rep.parabolics.size() == 1);
  CHECK(rep.parabolics[0].presentation.relators.empty());
  CHECK(rep.parabolics[0].proper);
  CHECK(rep.parabolics[0].presentation_capped);  // 6 < rho
  CHECK(!rep.paper_faithful);
}

TEST_CASE("detect exhausts its budget on the abelian group") {
  RelativePresentation z = z2_rel_a();
  ConstantPack pack = ConstantPack::scaled(BigInt(3600), BigInt(1), BigInt(1), BigInt(1));
  DetectionBudget budget;
  budget.max_rounds = 3;
  DetectionReport rep = detect(z, pack, budget);
  CHECK(!rep.terminated);
  CHECK(rep.rounds_run == 3);
  REQUIRE(rep.failures.size() == 3);
  CHECK(rep.failures[0].K == 3600);
  CHECK(rep.failures[1].K == 3601);
  CHECK(rep.failures[2].K == 3602);
  for (const FailedRound& f : rep.failures) CHECK(f.witness_area > 0);
  CHECK(rep.K == 3602);
}
