#include <algorithm>
#include <random>

#include "doctest.h"
#include "vankamp/relpres.hpp"

using namespace vk;

namespace {

Word wparse(const Alphabet& a, const std::string& text) {
  Word w;
  std::string tok;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ' ') {
      if (!tok.empty()) {
        auto s = a.find(tok);
        REQUIRE(s);
        w.syms.push_back(*s);
        tok.clear();
      }
    } else {
      tok += text[i];
    }
  }
  return w;
}

// F2 = <a,b | > relative to <a>.
RelativePresentation f2_rel_a() {
  FinitePresentation p;
  p.alphabet = Alphabet::from_generators({"a", "b"});
  auto o = std::make_shared<FreeOracle>(p.alphabet);
  return RelativePresentation::build_exact(p, {{0, 1}}, o);
}

// Z^2 = <a,b | triangularized [a,b]> relative to the whole group. The fresh
// prefix generator is substituted by its defining word before the abelian
// oracle decides.
RelativePresentation z2_rel_all() {
  FinitePresentation p;
  p.alphabet = Alphabet::from_generators({"a", "b"});
  p.relators = {wparse(p.alphabet, "a b a^-1 b^-1")};
  Triangularization t = triangularize(p);
  auto inner = std::make_shared<AbelianOracle>(p.alphabet);
  auto o = std::make_shared<SubstitutionOracle>(inner, t.presentation.alphabet,
                                                t.fresh_definitions);
  std::vector<Sym> all;
  for (Sym s = 0; s < p.alphabet.size(); ++s) all.push_back(s);
  return RelativePresentation::build_exact(t.presentation, {all}, o);
}

}  // namespace

TEST_CASE("build_exact preconditions") {
  FinitePresentation p;
  p.alphabet = Alphabet::from_generators({"a", "b"});
  auto o = std::make_shared<FreeOracle>(p.alphabet);
  CHECK_THROWS_AS(RelativePresentation::build_exact(p, {{0}}, o), ParseError);
  CHECK_THROWS_AS(RelativePresentation::build_exact(p, {{8, 9}}, o), AlphabetMismatch);
  p.relators = {wparse(p.alphabet, "a b a^-1 b^-1")};
  CHECK_THROWS_AS(RelativePresentation::build_exact(p, {{0, 1}}, o), ParseError);

  RelativePresentation x = f2_rel_a();
  CHECK(x.parabolic_count() == 1);
  CHECK(x.rho() == -1);
  CHECK(x.parabolic(0).ball(1).size() == 3);

  RelativePresentation z = z2_rel_all();
  CHECK(z.parabolic_count() == 1);
  CHECK(z.parabolic(0).ball(1).size() == 5);
}

TEST_CASE("norms") {
  RelativePresentation x = f2_rel_a();
  const Alphabet& a = x.alphabet();
  HatWord w;
  w.letters = {HatLetter::s_letter(*a.find("a")), HatLetter::s_letter(*a.find("b"))};
  HatNorms n = norms(w);
  CHECK(n.length == 2);
  CHECK(n.norm1 == 2);
  CHECK(n.norminf == 1);

  HatWord pw;
  pw.letters = {x.make_pletter(0, wparse(a, "a a a"), 8)};
  n = norms(pw);
  CHECK(n.length == 1);
  CHECK(n.norm1 == 3);
  CHECK(n.norminf == 3);

  n = norms(HatWord{});
  CHECK(n.length == 0);
  CHECK(n.norm1 == 0);
  CHECK(n.norminf == 0);
}

TEST_CASE("make_pletter canonicalizes and rejects identity") {
  RelativePresentation x = f2_rel_a();
  const Alphabet& a = x.alphabet();
  HatLetter l = x.make_pletter(0, wparse(a, "a a a^-1"), 8);
  CHECK(l.geodesic == wparse(a, "a"));
  CHECK(l.complexity() == 1);
  CHECK_THROWS_AS(x.make_pletter(0, wparse(a, "a a^-1"), 8), ParseError);
  CHECK_THROWS_AS(x.make_pletter(0, wparse(a, "a a a"), 2), Overflow);
}

TEST_CASE("letter and word inversion") {
  RelativePresentation x = f2_rel_a();
  const Alphabet& a = x.alphabet();
  HatLetter p3 = x.make_pletter(0, wparse(a, "a a a"), 8);
  HatLetter inv = x.letter_inverse(p3, 8);
  CHECK(inv.geodesic == wparse(a, "a^-1 a^-1 a^-1"));
  CHECK(inv.complexity() == p3.complexity());

  HatWord w;
  w.letters = {HatLetter::s_letter(*a.find("b")), p3};
  HatWord wi = x.hat_inverse(w, 8);
  REQUIRE(wi.size() == 2);
  CHECK(wi.letters[0] == inv);
  CHECK(wi.letters[1] == HatLetter::s_letter(*a.find("b^-1")));
  CHECK(x.hat_trivial(w.letters.empty() ? w : [&] {
    HatWord cat = w;
    cat.letters.insert(cat.letters.end(), wi.letters.begin(), wi.letters.end());
    return cat;
  }()));
}

TEST_CASE("classify_relator examples") {
  RelativePresentation x = f2_rel_a();
  const Alphabet& a = x.alphabet();
  HatLetter pa = x.make_pletter(0, wparse(a, "a"), 8);
  HatLetter pa2inv = x.make_pletter(0, wparse(a, "a^-1 a^-1"), 8);

  HatWord pairing;
  pairing.letters = {pa, HatLetter::s_letter(*a.find("a^-1"))};
  CHECK(x.classify_relator(pairing) == RelatorClass{RelatorKind::RPrimePairing, 0});

  HatWord tri;
  tri.letters = {pa, pa, pa2inv};
  CHECK(x.classify_relator(tri) == RelatorClass{RelatorKind::Parabolic, 0});

  HatWord notrel;
  notrel.letters = {HatLetter::s_letter(*a.find("a")), HatLetter::s_letter(*a.find("b"))};
  CHECK(x.classify_relator(notrel) == RelatorClass{RelatorKind::NotARelator, -1});

  // Nontrivial parabolic word is not a relator.
  HatWord nontriv;
  nontriv.letters = {pa, pa};
  CHECK(!x.classify_relator(nontriv).is_relator());

  // Mismatched pairing (s-letter not inverse to the parabolic letter).
  HatWord bad;
  bad.letters = {pa, HatLetter::s_letter(*a.find("a"))};
  CHECK(!x.classify_relator(bad).is_relator());

  // Length bounds.
  HatWord one;
  one.letters = {pa};
  CHECK(!x.classify_relator(one).is_relator());
  HatWord four;
  four.letters = {pa, pa, pa, pa};
  CHECK(!x.classify_relator(four).is_relator());
}

TEST_CASE("classify_relator base relators") {
  RelativePresentation z = z2_rel_all();
  const Alphabet& a = z.alphabet();
  for (const Word& r : z.base().relators) {
    HatWord w;
    for (Sym s : r.syms) w.letters.push_back(HatLetter::s_letter(s));
    CHECK(z.classify_relator(w) == RelatorClass{RelatorKind::RPrimeBase, -1});
    // Rotation of the inverse is still the same relator class.
    Word ri = word_inverse(a, r);
    std::rotate(ri.syms.begin(), ri.syms.begin() + 1, ri.syms.end());
    HatWord wi;
    for (Sym s : ri.syms) wi.letters.push_back(HatLetter::s_letter(s));
    CHECK(z.classify_relator(wi) == RelatorClass{RelatorKind::RPrimeBase, -1});
  }
  HatWord no;
  no.letters = {HatLetter::s_letter(*a.find("a")), HatLetter::s_letter(*a.find("b"))};
  CHECK(!z.classify_relator(no).is_relator());
}

TEST_CASE("classify_relator invariance under rotation and inversion") {
  RelativePresentation x = f2_rel_a();
  RelativePresentation z = z2_rel_all();
  std::mt19937 rng(23);
  for (RelativePresentation* xp : {&x, &z}) {
    const Alphabet& a = xp->alphabet();
    std::uniform_int_distribution<int> pick_kind(0, 2);
    std::uniform_int_distribution<int> pick_sym(0, a.size() - 1);
    std::uniform_int_distribution<int> pick_len(2, 3);
    std::uniform_int_distribution<int> pick_exp(-2, 2);
    for (int trial = 0; trial < 300; ++trial) {
      HatWord w;
      int len = pick_len(rng);
      for (int i = 0; i < len; ++i) {
        if (pick_kind(rng) == 0) {
          int e = pick_exp(rng);
          if (e == 0) e = 1;
          Word pw;
          Sym base = e < 0 ? a.inverse(0) : 0;
          for (int k = 0; k < std::abs(e); ++k) pw.syms.push_back(base);
          w.letters.push_back(xp->make_pletter(0, pw, 8));
        } else {
          w.letters.push_back(HatLetter::s_letter(pick_sym(rng)));
        }
      }
      RelatorClass c = xp->classify_relator(w);
      HatWord rot = w;
      std::rotate(rot.letters.begin(), rot.letters.begin() + 1, rot.letters.end());
      CHECK(xp->classify_relator(rot) == c);
      CHECK(xp->classify_relator(xp->hat_inverse(w, 8)) == c);
      if (c.kind == RelatorKind::Parabolic) CHECK(xp->hat_trivial(w));
    }
  }
}

TEST_CASE("norm inequality property") {
  RelativePresentation x = f2_rel_a();
  const Alphabet& a = x.alphabet();
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> pick_sym(0, a.size() - 1);
  std::uniform_int_distribution<int> pick_exp(1, 4);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    HatWord w;
    int len = 1 + trial % 6;
    for (int i = 0; i < len; ++i) {
      if (coin(rng)) {
        w.letters.push_back(HatLetter::s_letter(pick_sym(rng)));
      } else {
        int e = pick_exp(rng);
        Sym base = coin(rng) ? 0 : a.inverse(0);
        Word pw;
        for (int k = 0; k < e; ++k) pw.syms.push_back(base);
        w.letters.push_back(x.make_pletter(0, pw, 8));
      }
    }
    HatNorms n = norms(w);
    CHECK(n.norminf <= n.norm1);
    CHECK(n.norm1 <= n.length * n.norminf);
  }
}

TEST_CASE("hat word round-trip through text") {
  RelativePresentation x = f2_rel_a();
  const Alphabet& a = x.alphabet();
  HatWord w = parse_hat_word(x, "a par1:a^-2 b^-1 par1:a.a.a", 8);
  REQUIRE(w.size() == 4);
  CHECK(w.letters[0] == HatLetter::s_letter(*a.find("a")));
  CHECK(w.letters[1].kind == HatLetter::PLetter);
  CHECK(w.letters[1].geodesic == wparse(a, "a^-1 a^-1"));
  CHECK(w.letters[2] == HatLetter::s_letter(*a.find("b^-1")));
  CHECK(w.letters[3].geodesic == wparse(a, "a a a"));
  std::string text = hat_word_to_string(x, w);
  CHECK(parse_hat_word(x, text, 8) == w);
  CHECK_THROWS_AS(parse_hat_word(x, "par1:a.a^-1", 8), ParseError);
  CHECK_THROWS_AS(parse_hat_word(x, "par2:a", 8), ParseError);
  CHECK_THROWS_AS(parse_hat_word(x, "q", 8), ParseError);
}
