#pragma once

#include <memory>
#include <string>

#include "vankamp/relpres.hpp"

namespace vktest {

inline vk::Word wparse(const vk::Alphabet& a, const std::string& text) {
  vk::Word w;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    auto s = a.find(tok);
    if (!s) throw vk::ParseError("test word symbol not found: " + tok);
    w.syms.push_back(*s);
    tok.clear();
  };
  for (char c : text) {
    if (c == ' ')
      flush();
    else
      tok += c;
  }
  flush();
  return w;
}

// F2 = <a,b | > relative to the cyclic subgroup <a>.
inline vk::RelativePresentation f2_rel_a() {
  vk::FinitePresentation p;
  p.alphabet = vk::Alphabet::from_generators({"a", "b"});
  auto o = std::make_shared<vk::FreeOracle>(p.alphabet);
  return vk::RelativePresentation::build_exact(p, {{0, 1}}, o);
}

// The triangularized Z^2 oracle: abelian on {a,b}, with the fresh prefix
// generator(s) substituted by their defining words.
inline vk::OraclePtr z2_oracle(const vk::Triangularization& t, const vk::Alphabet& base) {
  auto inner = std::make_shared<vk::AbelianOracle>(base);
  return std::make_shared<vk::SubstitutionOracle>(inner, t.presentation.alphabet,
                                                  t.fresh_definitions);
}

// Z^2 = <a,b | [a,b] triangularized> (alphabet a, a^-1, b, b^-1, t1, t1^-1
// with t1 = ab), relative to the whole group generated by a and b.
inline vk::RelativePresentation z2_rel_all() {
  vk::FinitePresentation p;
  p.alphabet = vk::Alphabet::from_generators({"a", "b"});
  p.relators = {wparse(p.alphabet, "a b a^-1 b^-1")};
  vk::Triangularization t = vk::triangularize(p);
  std::vector<vk::Sym> all;
  for (vk::Sym s = 0; s < p.alphabet.size(); ++s) all.push_back(s);
  return vk::RelativePresentation::build_exact(t.presentation, {all},
                                               z2_oracle(t, p.alphabet));
}

// Z^2 relative to the cyclic subgroup <a> (the improper-filling test group).
inline vk::RelativePresentation z2_rel_a() {
  vk::FinitePresentation p;
  p.alphabet = vk::Alphabet::from_generators({"a", "b"});
  p.relators = {wparse(p.alphabet, "a b a^-1 b^-1")};
  vk::Triangularization t = vk::triangularize(p);
  return vk::RelativePresentation::build_exact(t.presentation, {{0, 1}},
                                               z2_oracle(t, p.alphabet));
}

inline vk::HatLetter sl(const vk::RelativePresentation& x, const std::string& name) {
  auto s = x.alphabet().find(name);
  if (!s) throw vk::ParseError("test symbol not found: " + name);
  return vk::HatLetter::s_letter(*s);
}

inline vk::HatLetter pl(const vk::RelativePresentation& x, int i, const std::string& word) {
  return x.make_pletter(i, wparse(x.alphabet(), word), 64);
}

}  // namespace vktest
