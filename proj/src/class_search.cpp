#include "vankamp/class_search.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "vankamp/textio.hpp"

namespace vk {

using nlohmann::json;

// --- class enumeration -----------------------------------------------------

ClassEnumerator ClassEnumerator::from_list(std::vector<FinitePresentation> list) {
  for (const FinitePresentation& p : list) p.validate();
  ClassEnumerator e;
  e.is_list_ = true;
  e.list_ = std::move(list);
  return e;
}

ClassEnumerator ClassEnumerator::from_command(std::vector<std::string> argv) {
  ClassEnumerator e;
  e.is_list_ = false;
  e.argv_ = std::move(argv);
  return e;
}

std::optional<FinitePresentation> ClassEnumerator::next() {
  if (is_list_) {
    if (consumed_ >= static_cast<long long>(list_.size())) return std::nullopt;
    return list_[static_cast<size_t>(consumed_++)];
  }
  if (!child_) child_ = std::make_shared<LineSubprocess>(argv_);
  std::string message, line;
  while (child_->try_recv_line(line)) {
    if (line.empty()) {
      if (message.empty()) continue;  // stray blank line
      break;
    }
    message += line + "\n";
  }
  if (message.empty()) return std::nullopt;
  PresentationFile f = parse_presentation_text(message);
  ++consumed_;
  return f.presentation;
}

void ClassEnumerator::skip_to(long long n) {
  while (consumed_ < n)
    if (!next()) throw ParseError("checkpoint corruption: class enumerator exhausted early");
}

// --- Tietze moves ----------------------------------------------------------

namespace {

Word certificate_product(const Alphabet& a, const std::vector<Word>& basis,
                         const std::vector<ConjugateFactor>& cert) {
  Word acc;
  for (const ConjugateFactor& f : cert) {
    if (f.relator < 0 || f.relator >= static_cast<int>(basis.size()))
      throw ParseError("certificate refers to a missing relator");
    Word r = basis[static_cast<size_t>(f.relator)];
    if (f.inverted) r = word_inverse(a, r);
    acc = acc.concat(f.conjugator).concat(r).concat(word_inverse(a, f.conjugator));
  }
  return free_reduce(a, acc);
}

void check_certificate(const Alphabet& a, const std::vector<Word>& basis,
                       const std::vector<ConjugateFactor>& cert, const Word& claimed) {
  if (certificate_product(a, basis, cert) != free_reduce(a, claimed))
    throw ParseError("redundancy certificate does not reduce to the claimed relator");
}

// Canonical form of a relator up to rotation and inversion.
Word relator_canonical(const Alphabet& a, const Word& r) {
  Word c = min_rotation(r);
  Word ci = min_rotation(word_inverse(a, r));
  return ci < c ? ci : c;
}

}  // namespace

FinitePresentation apply_move(const FinitePresentation& p, const TietzeMove& m) {
  const Alphabet& a = p.alphabet;
  switch (m.kind) {
    case TietzeMove::Kind::AddRelator: {
      Word r = cyclic_reduce(a, m.relator);
      if (r.empty()) throw ParseError("added relator reduces to the empty word");
      check_certificate(a, p.relators, m.certificate, m.relator);
      FinitePresentation q = p;
      q.relators.push_back(std::move(r));
      q.validate();
      return q;
    }
    case TietzeMove::Kind::RemoveRelator: {
      if (m.relator_index < 0 || m.relator_index >= static_cast<int>(p.relators.size()))
        throw ParseError("relator removal index out of range");
      FinitePresentation q = p;
      Word removed = q.relators[static_cast<size_t>(m.relator_index)];
      q.relators.erase(q.relators.begin() + m.relator_index);
      check_certificate(a, q.relators, m.certificate, removed);
      return q;
    }
    case TietzeMove::Kind::AddGenerator: {
      if (a.find(m.gen_name) || a.find(m.gen_name + "^-1"))
        throw ParseError("added generator name already in use: " + m.gen_name);
      Word def = free_reduce(a, m.definition);
      if (def.empty()) throw ParseError("generator definition reduces to the empty word");
      FinitePresentation q = p;
      Sym g = q.alphabet.add_generator(m.gen_name);
      Word rel({q.alphabet.inverse(g)});
      rel = rel.concat(def);
      q.relators.push_back(std::move(rel));
      q.validate();
      return q;
    }
    case TietzeMove::Kind::RemoveGenerator: {
      auto gs = a.find(m.gen_name);
      if (!gs) throw ParseError("no such generator: " + m.gen_name);
      Sym g = *gs, gi = a.inverse(g);
      if (gi == g) throw ParseError("cannot remove an involutive generator");
      Word def = free_reduce(a, m.definition);
      for (Sym s : def.syms)
        if (s == g || s == gi) throw ParseError("generator definition mentions the generator");
      Word defining({gi});
      defining = cyclic_reduce(a, defining.concat(def));
      Word key = relator_canonical(a, defining);
      int found = -1;
      for (size_t i = 0; i < p.relators.size(); ++i) {
        if (relator_canonical(a, p.relators[i]) == key) {
          found = static_cast<int>(i);
          break;
        }
      }
      if (found < 0) throw ParseError("no defining relator for generator " + m.gen_name);
      // invertibility requires the generator to be otherwise unused
      for (size_t i = 0; i < p.relators.size(); ++i) {
        if (static_cast<int>(i) == found) continue;
        for (Sym s : p.relators[i].syms)
          if (s == g || s == gi)
            throw ParseError("generator occurs outside its defining relator");
      }
      FinitePresentation q;
      std::vector<Sym> remap(static_cast<size_t>(a.size()), -1);
      for (Sym s = 0; s < a.size(); ++s) {
        if (s == g || s == gi) continue;
        if (a.inverse(s) == s) {
          remap[static_cast<size_t>(s)] = q.alphabet.add_generator(a.name(s), true);
        } else if (a.inverse(s) > s) {
          Sym ns = q.alphabet.add_generator(a.name(s), false);
          remap[static_cast<size_t>(s)] = ns;
          remap[static_cast<size_t>(a.inverse(s))] = q.alphabet.inverse(ns);
        }
      }
      for (size_t i = 0; i < p.relators.size(); ++i) {
        if (static_cast<int>(i) == found) continue;
        Word r;
        for (Sym s : p.relators[i].syms) r.syms.push_back(remap[static_cast<size_t>(s)]);
        q.relators.push_back(std::move(r));
      }
      q.validate();
      return q;
    }
  }
  throw ParseError("unknown move kind");
}

// --- relabeling-invariant keys ----------------------------------------------

std::vector<long long> presentation_key(const FinitePresentation& p) {
  const Alphabet& a = p.alphabet;
  // generator slots: base symbol and involutivity
  std::vector<Sym> gens;
  for (Sym s = 0; s < a.size(); ++s)
    if (a.inverse(s) >= s) gens.push_back(s);
  std::vector<int> order(gens.size());
  for (size_t i = 0; i < order.size(); ++i) order[static_cast<size_t>(i)] = static_cast<int>(i);

  std::vector<long long> best;
  do {
    bool flags_ok = true;
    for (size_t i = 0; i < gens.size() && flags_ok; ++i) {
      Sym from = gens[i], to = gens[static_cast<size_t>(order[i])];
      if ((a.inverse(from) == from) != (a.inverse(to) == to)) flags_ok = false;
    }
    if (!flags_ok) continue;
    // symbol map: gens[i] -> 2*order[i] slot encoding (involutive: single id)
    std::vector<long long> code(static_cast<size_t>(a.size()), -1);
    for (size_t i = 0; i < gens.size(); ++i) {
      Sym from = gens[i];
      long long slot = order[i];
      code[static_cast<size_t>(from)] = 2 * slot;
      code[static_cast<size_t>(a.inverse(from))] = a.inverse(from) == from ? 2 * slot : 2 * slot + 1;
    }
    std::vector<std::vector<long long>> rels;
    for (const Word& r : p.relators) {
      // canonical up to rotation and inversion in the relabeled coding
      std::vector<long long> w;
      for (Sym s : r.syms) w.push_back(code[static_cast<size_t>(s)]);
      std::vector<long long> wi;
      for (auto it = r.syms.rbegin(); it != r.syms.rend(); ++it)
        wi.push_back(code[static_cast<size_t>(a.inverse(*it))]);
      std::vector<long long> cbest = w;
      for (auto* v : {&w, &wi}) {
        std::vector<long long> cur = *v;
        for (size_t k = 0; k < cur.size(); ++k) {
          if (cur < cbest) cbest = cur;
          std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        }
      }
      rels.push_back(std::move(cbest));
    }
    std::sort(rels.begin(), rels.end());
    std::vector<long long> key;
    key.push_back(static_cast<long long>(gens.size()));
    for (size_t i = 0; i < gens.size(); ++i)
      key.push_back(a.inverse(gens[i]) == gens[i] ? 1 : 0);
    for (const auto& r : rels) {
      key.push_back(-1);  // separator
      key.insert(key.end(), r.begin(), r.end());
    }
    if (best.empty() || key < best) best = std::move(key);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

// --- neighbor enumeration ----------------------------------------------------

namespace {

// All reduced words of length <= maxlen, shortlex order, including the
// empty word.
std::vector<Word> reduced_words(const Alphabet& a, long long maxlen) {
  std::vector<Word> out{Word{}};
  size_t lo = 0;
  for (long long len = 1; len <= maxlen; ++len) {
    size_t hi = out.size();
    for (size_t i = lo; i < hi; ++i)
      for (Sym s = 0; s < a.size(); ++s) {
        if (!out[i].empty() && a.inverse(out[i].syms.back()) == s) continue;
        Word w = out[i];
        w.syms.push_back(s);
        out.push_back(std::move(w));
      }
    lo = hi;
  }
  return out;
}

// Depth-first search over certified conjugate products. Visits every product
// of 1..max_factors conjugates in deterministic order; `visit` returns true
// to stop (used by the redundancy search), false to keep going (used by the
// relator-add enumeration).
bool visit_products(const Alphabet& a, const std::vector<Word>& basis,
                    const std::vector<Word>& conjugators, long long max_factors,
                    std::vector<ConjugateFactor>& cert, Word& prefix,
                    const std::function<bool(const std::vector<ConjugateFactor>&, const Word&)>&
                        visit) {
  if (!cert.empty() && visit(cert, prefix)) return true;
  if (static_cast<long long>(cert.size()) >= max_factors) return false;
  for (int r = 0; r < static_cast<int>(basis.size()); ++r)
    for (int inv = 0; inv < 2; ++inv)
      for (const Word& c : conjugators) {
        Word factor = basis[static_cast<size_t>(r)];
        if (inv) factor = word_inverse(a, factor);
        factor = c.concat(factor).concat(word_inverse(a, c));
        Word next = free_reduce(a, prefix.concat(factor));
        cert.push_back({r, c, inv != 0});
        std::swap(prefix, next);
        if (visit_products(a, basis, conjugators, max_factors, cert, prefix, visit)) return true;
        std::swap(prefix, next);
        cert.pop_back();
      }
  return false;
}

std::optional<std::vector<ConjugateFactor>> find_certificate(const Alphabet& a,
                                                             const std::vector<Word>& basis,
                                                             const Word& target,
                                                             const TietzeCaps& caps) {
  if (basis.empty()) return std::nullopt;
  Word goal = free_reduce(a, target);
  std::vector<Word> conj = reduced_words(a, caps.max_conjugator_length);
  std::vector<ConjugateFactor> cert;
  std::optional<std::vector<ConjugateFactor>> found;
  Word prefix;
  visit_products(a, basis, conj, caps.max_conjugate_factors, cert, prefix,
                 [&](const std::vector<ConjugateFactor>& c, const Word& w) {
                   if (w != goal) return false;
                   found = c;
                   return true;
                 });
  return found;
}

std::string fresh_gen_name(const Alphabet& a) {
  for (int i = 1;; ++i) {
    std::string cand = "x" + std::to_string(i);
    if (!a.find(cand) && !a.find(cand + "^-1")) return cand;
  }
}

}  // namespace

std::vector<std::pair<TietzeMove, FinitePresentation>> tietze_neighbors(
    const FinitePresentation& p, const TietzeCaps& caps) {
  std::vector<std::pair<TietzeMove, FinitePresentation>> out;
  if (caps.max_moves <= 0) return out;
  std::set<std::vector<long long>> seen{presentation_key(p)};
  auto emit = [&](TietzeMove m) {
    FinitePresentation q = apply_move(p, m);
    if (seen.insert(presentation_key(q)).second) out.emplace_back(std::move(m), std::move(q));
  };
  const Alphabet& a = p.alphabet;

  // remove a redundant relator
  for (int i = 0; i < static_cast<int>(p.relators.size()); ++i) {
    std::vector<Word> others;
    for (int j = 0; j < static_cast<int>(p.relators.size()); ++j)
      if (j != i) others.push_back(p.relators[static_cast<size_t>(j)]);
    if (auto cert = find_certificate(a, others, p.relators[static_cast<size_t>(i)], caps)) {
      TietzeMove m;
      m.kind = TietzeMove::Kind::RemoveRelator;
      m.relator_index = i;
      m.certificate = *cert;
      emit(std::move(m));
    }
  }

  // add a certified-redundant relator
  if (!p.relators.empty()) {
    std::set<Word> existing;
    for (const Word& r : p.relators) existing.insert(relator_canonical(a, r));
    std::vector<Word> conj = reduced_words(a, caps.max_conjugator_length);
    std::map<Word, std::vector<ConjugateFactor>> adds;  // canonical relator -> certificate
    std::vector<ConjugateFactor> cert;
    Word prefix;
    visit_products(a, p.relators, conj, caps.max_conjugate_factors, cert, prefix,
                   [&](const std::vector<ConjugateFactor>& c, const Word& w) {
                     Word r = cyclic_reduce(a, w);
                     if (r.empty() || static_cast<long long>(r.size()) > caps.max_relator_length)
                       return false;
                     Word key = relator_canonical(a, r);
                     if (!existing.count(key) && !adds.count(key)) adds[key] = c;
                     return false;
                   });
    for (auto& [rel, c] : adds) {
      TietzeMove m;
      m.kind = TietzeMove::Kind::AddRelator;
      // certificates were collected against the uncyclically-reduced product;
      // rebuild the claimed relator as the exact product
      m.relator = certificate_product(a, p.relators, c);
      if (relator_canonical(a, cyclic_reduce(a, m.relator)) != rel) continue;
      m.certificate = std::move(c);
      emit(std::move(m));
    }
  }

  // add a generator with a defining word
  {
    long long gen_count = 0;
    for (Sym s = 0; s < a.size(); ++s)
      if (a.inverse(s) >= s) ++gen_count;
    if (gen_count < caps.max_generators) {
      for (const Word& d : reduced_words(a, std::max<long long>(caps.max_relator_length - 1, 0))) {
        if (d.empty()) continue;
        TietzeMove m;
        m.kind = TietzeMove::Kind::AddGenerator;
        m.gen_name = fresh_gen_name(a);
        m.definition = d;
        emit(std::move(m));
      }
    }
  }

  // remove a generator that occurs only in a defining relator
  for (Sym g = 0; g < a.size(); ++g) {
    if (a.inverse(g) <= g) continue;  // one try per generator pair, skip involutive
    Sym gi = a.inverse(g);
    int defining = -1, occurrences = 0;
    int pos = -1;
    for (int i = 0; i < static_cast<int>(p.relators.size()); ++i) {
      const Word& r = p.relators[static_cast<size_t>(i)];
      for (int k = 0; k < static_cast<int>(r.size()); ++k)
        if (r.syms[static_cast<size_t>(k)] == g || r.syms[static_cast<size_t>(k)] == gi) {
          ++occurrences;
          defining = i;
          pos = k;
        }
    }
    if (occurrences != 1) continue;
    const Word& r = p.relators[static_cast<size_t>(defining)];
    // rotate the single occurrence to the front: r = g^eps d
    Word rot = r;
    std::rotate(rot.syms.begin(), rot.syms.begin() + pos, rot.syms.end());
    Word d(std::vector<Sym>(rot.syms.begin() + 1, rot.syms.end()));
    if (rot.syms[0] == g) d = word_inverse(a, d);  // g d' trivial => g = d'^-1
    if (static_cast<long long>(d.size()) > caps.max_relator_length) continue;
    TietzeMove m;
    m.kind = TietzeMove::Kind::RemoveGenerator;
    m.gen_name = a.name(g);
    m.definition = d;
    emit(std::move(m));
  }
  return out;
}

// --- matching ----------------------------------------------------------------

namespace {

using Key = std::vector<long long>;

// Breadth-first reachability maps up to the given depth.
std::map<Key, long long> reach(const FinitePresentation& p, const TietzeCaps& caps,
                               long long depth) {
  std::map<Key, long long> dist{{presentation_key(p), 0}};
  std::vector<FinitePresentation> frontier{p};
  for (long long d = 1; d <= depth; ++d) {
    std::vector<FinitePresentation> next;
    for (const FinitePresentation& f : frontier)
      for (auto& [m, q] : tietze_neighbors(f, caps)) {
        Key k = presentation_key(q);
        if (dist.emplace(std::move(k), d).second) next.push_back(std::move(q));
      }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return dist;
}

}  // namespace

MatchResult match_presentation(const FinitePresentation& p, const FinitePresentation& q,
                               const TietzeCaps& caps) {
  MatchResult res;
  Key pk = presentation_key(p), qk = presentation_key(q);
  if (pk == qk) {
    res.matched = true;
    return res;
  }
  if (caps.max_moves <= 0) return res;
  // bidirectional decision: meet in the middle within the move budget
  long long dp = (caps.max_moves + 1) / 2, dq = caps.max_moves / 2;
  std::map<Key, long long> from_p = reach(p, caps, dp);
  std::map<Key, long long> from_q = reach(q, caps, dq);
  long long total = -1;
  for (const auto& [k, d] : from_p) {
    auto it = from_q.find(k);
    if (it != from_q.end() && (total < 0 || d + it->second < total)) total = d + it->second;
  }
  if (total < 0) return res;
  // certificate synthesis: forward search from p to the found distance, so
  // the move path replays in p's own coordinates
  struct Node {
    FinitePresentation pres;
    int parent = -1;
    TietzeMove move;
  };
  std::vector<Node> nodes{{p, -1, {}}};
  std::set<Key> seen{pk};
  size_t lo = 0;
  for (long long d = 1; d <= total; ++d) {
    size_t hi = nodes.size();
    for (size_t i = lo; i < hi; ++i)
      for (auto& [m, r] : tietze_neighbors(nodes[i].pres, caps)) {
        Key k = presentation_key(r);
        if (!seen.insert(k).second) continue;
        nodes.push_back({std::move(r), static_cast<int>(i), std::move(m)});
        if (k == qk) {
          for (int at = static_cast<int>(nodes.size()) - 1; at > 0;
               at = nodes[static_cast<size_t>(at)].parent)
            res.path.push_back(nodes[static_cast<size_t>(at)].move);
          std::reverse(res.path.begin(), res.path.end());
          // mechanical replay check
          FinitePresentation cur = p;
          for (const TietzeMove& mv : res.path) cur = apply_move(cur, mv);
          if (presentation_key(cur) != qk)
            throw InternalInvariantError("match path fails to replay");
          res.matched = true;
          return res;
        }
      }
    lo = hi;
  }
  // the meet distance used both directions; a strictly forward path of the
  // same length must exist because every move is invertible within the caps
  throw InternalInvariantError("meet-in-the-middle match not reproducible forward");
}

// --- the dovetailed search -----------------------------------------------------

namespace {

json move_to_json(const Alphabet&, const TietzeMove&);

Word parse_plain_word(const Alphabet& a, const std::string& text) {
  std::vector<Sym> syms;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) append_symbol_token(a, tok, syms);
  return Word(std::move(syms));
}

}  // namespace

Searcher::Searcher(FinitePresentation base, OraclePtr oracle, ClassEnumerator cls,
                   SearchBudget budget, ConstantPack pack0)
    : base_(std::move(base)),
      oracle_(std::move(oracle)),
      cls_(std::move(cls)),
      budget_(std::move(budget)),
      pack0_(std::move(pack0)) {
  base_.validate();
}

ConstantPack Searcher::track_pack(const Track& t) const {
  if (pack0_.paper_faithful) return ConstantPack::paper(t.K);
  return ConstantPack::scaled(t.K, pack0_.B, pack0_.area_cap, pack0_.proper_bound);
}

RelativePresentation& Searcher::track_presentation(Track& t) {
  if (t.x) return *t.x;
  FinitePresentation p = base_;
  OraclePtr o = oracle_;
  Alphabet ext = base_.alphabet;
  std::vector<std::pair<Sym, Word>> defs;
  std::vector<std::vector<Sym>> subsets;
  std::vector<Word> long_rels;
  int counter = 0;
  for (const std::vector<Word>& set : t.tuple) {
    std::vector<Sym> syms;
    for (const Word& w : set) {
      if (w.size() == 1) {
        syms.push_back(w.syms[0]);
        syms.push_back(ext.inverse(w.syms[0]));
      } else {
        std::string name;
        do {
          name = "u" + std::to_string(++counter);
        } while (ext.find(name));
        Sym g = ext.add_generator(name);
        defs.emplace_back(g, w);
        Word rel({ext.inverse(g)});
        long_rels.push_back(rel.concat(w));
        syms.push_back(g);
        syms.push_back(ext.inverse(g));
      }
    }
    std::sort(syms.begin(), syms.end());
    syms.erase(std::unique(syms.begin(), syms.end()), syms.end());
    subsets.push_back(std::move(syms));
  }
  if (!defs.empty()) {
    o = std::make_shared<SubstitutionOracle>(o, ext, defs);
    p.alphabet = ext;
    for (Word& r : long_rels) p.relators.push_back(std::move(r));
  }
  if (!p.is_triangular()) {
    Triangularization tri = triangularize(p);
    o = std::make_shared<SubstitutionOracle>(o, tri.presentation.alphabet,
                                             tri.fresh_definitions);
    p = std::move(tri.presentation);
  }
  t.x = RelativePresentation::build_exact(p, subsets, std::move(o), budget_.detect.radius_cap);
  return *t.x;
}

std::vector<std::vector<std::vector<Word>>> Searcher::tuples_of_total_length(int total) const {
  const Alphabet& a = base_.alphabet;
  // candidate elements: reduced words canonicalized against inversion,
  // ordered shortlex
  std::vector<Word> universe;
  for (const Word& w : reduced_words(a, budget_.max_word_length)) {
    if (w.empty()) continue;
    Word inv = word_inverse(a, w);
    if (shortlex_less(inv, w)) continue;  // keep the shortlex-least of {w, w^-1}
    universe.push_back(w);
  }
  // subsets of the universe with their total lengths, in flattened
  // lexicographic order (generated by index-increasing chains)
  std::vector<std::pair<std::vector<Word>, int>> subsets;
  std::function<void(size_t, std::vector<Word>&, int)> grow = [&](size_t from,
                                                                  std::vector<Word>& cur,
                                                                  int len) {
    if (!cur.empty()) subsets.emplace_back(cur, len);
    for (size_t i = from; i < universe.size(); ++i) {
      int nl = len + static_cast<int>(universe[i].size());
      if (nl > total) continue;
      cur.push_back(universe[i]);
      grow(i + 1, cur, nl);
      cur.pop_back();
    }
  };
  std::vector<Word> cur;
  grow(0, cur, 0);

  // families: non-decreasing chains of distinct subsets, total length == total
  std::vector<std::vector<std::vector<Word>>> families;
  std::function<void(size_t, std::vector<std::vector<Word>>&, int)> build =
      [&](size_t from, std::vector<std::vector<Word>>& fam, int len) {
        if (len == total && !fam.empty()) families.push_back(fam);
        if (static_cast<int>(fam.size()) >= budget_.max_tuple_n) return;
        for (size_t i = from; i < subsets.size(); ++i) {
          if (len + subsets[i].second > total) continue;
          fam.push_back(subsets[i].first);
          build(i + 1, fam, len + subsets[i].second);
          fam.pop_back();
        }
      };
  std::vector<std::vector<Word>> fam;
  build(0, fam, 0);
  // order: flattened lexicographic, then subset count ascending
  std::stable_sort(families.begin(), families.end(),
                   [](const auto& u, const auto& v) {
                     std::vector<Word> fu, fv;
                     for (const auto& s : u) fu.insert(fu.end(), s.begin(), s.end());
                     for (const auto& s : v) fv.insert(fv.end(), s.begin(), s.end());
                     if (fu != fv) return fu < fv;
                     return u.size() < v.size();
                   });
  return families;
}

void Searcher::class_quantum() {
  if (auto p = cls_.next()) members_.push_back(std::move(*p));
}

void Searcher::spawn_quantum() {
  const Alphabet& a = base_.alphabet;
  long long max_universe_length = 0;
  for (const Word& w : reduced_words(a, budget_.max_word_length)) {
    if (w.empty()) continue;
    Word inv = word_inverse(a, w);
    if (shortlex_less(inv, w)) continue;
    max_universe_length += static_cast<long long>(w.size());
  }
  long long bound = max_universe_length * budget_.max_tuple_n;
  while (tuple_queue_.empty() && pending_total_ <= bound) {
    tuple_queue_ = tuples_of_total_length(pending_total_++);
  }
  if (tuple_queue_.empty()) return;
  Track t;
  t.tuple = std::move(tuple_queue_.front());
  tuple_queue_.erase(tuple_queue_.begin());
  t.K = pack0_.K;
  ++next_tuple_;
  tracks_.push_back(std::move(t));
}

bool Searcher::track_quantum(int ti) {
  Track& t = tracks_[static_cast<size_t>(ti)];
  RelativePresentation& x = track_presentation(t);
  for (long long q = 0; q < budget_.step_quantum && !t.passed && !t.discarded; ++q) {
    ConstantPack pack = track_pack(t);
    bool pass = false;
    try {
      pass = check_round(x, pack, budget_.detect.max_words_per_round,
                         budget_.detect.radius_cap)
                 .pass;
    } catch (const BudgetExhausted&) {
      pass = false;  // inconclusive round counts as a failure for this K
    }
    ++t.rounds;
    if (!pass) {
      t.K += budget_.detect.k_stride;
      continue;
    }
    // improper-family screening: discard when some subgroup swallows S
    for (int i = 0; i < x.parabolic_count() && !t.discarded; ++i) {
      try {
        if (!properness(x, i, pack, budget_.detect.radius_cap).proper) t.discarded = true;
      } catch (const Overflow&) {
        // verdict withheld; the family survives unconfirmed
      }
    }
    if (t.discarded)
      ++discarded_;
    else
      t.passed = true;
  }
  return t.passed;
}

std::optional<SearchReport> Searcher::try_terminate() {
  for (size_t ti = 0; ti < tracks_.size(); ++ti) {
    Track& t = tracks_[ti];
    if (!t.passed || t.discarded) continue;
    RelativePresentation& x = track_presentation(t);
    std::vector<FinitePresentation> pres;
    for (int i = 0; i < x.parabolic_count(); ++i)
      pres.push_back(parabolic_presentation(x, i, budget_.detect.relator_length_cap));
    std::vector<MatchCertificate> matches;
    bool all = !pres.empty();
    for (int i = 0; i < static_cast<int>(pres.size()) && all; ++i) {
      bool found = false;
      for (size_t m = 0; m < members_.size() && !found; ++m) {
        MatchResult r = match_presentation(pres[static_cast<size_t>(i)], members_[m],
                                           budget_.tietze);
        if (r.matched) {
          matches.push_back({i, static_cast<long long>(m), std::move(r.path)});
          found = true;
        }
      }
      all = found;
    }
    if (!all) continue;
    SearchReport rep;
    rep.terminated = true;
    rep.K = t.K;
    rep.tuple = t.tuple;
    rep.presentations = std::move(pres);
    rep.matches = std::move(matches);
    rep.steps = steps_;
    rep.cycles = cycles_;
    rep.class_members_seen = static_cast<long long>(members_.size());
    rep.tracks_spawned = static_cast<long long>(tracks_.size());
    rep.tracks_discarded = discarded_;
    rep.trace = trace_;
    return rep;
  }
  return std::nullopt;
}

SearchReport Searcher::run() {
  for (;;) {
    if (auto rep = try_terminate()) return *rep;
    if (steps_ >= budget_.max_steps) {
      SearchReport rep;
      rep.terminated = false;
      rep.K = 0;
      rep.steps = steps_;
      rep.cycles = cycles_;
      rep.class_members_seen = static_cast<long long>(members_.size());
      rep.tracks_spawned = static_cast<long long>(tracks_.size());
      rep.tracks_discarded = discarded_;
      rep.trace = trace_;
      return rep;
    }
    ++cycles_;
    class_quantum();
    ++steps_;
    spawn_quantum();
    ++steps_;
    for (int ti = 0; ti < static_cast<int>(tracks_.size()); ++ti) {
      Track& t = tracks_[static_cast<size_t>(ti)];
      if (t.discarded || t.passed) continue;  // settled tracks need no quanta
      trace_.emplace_back(cycles_, ti);
      track_quantum(ti);
      ++steps_;
    }
  }
}

json Searcher::checkpoint() const {
  json j;
  j["schema"] = 1;
  j["kind"] = "search-checkpoint";
  j["version"] = 1;
  j["steps"] = steps_;
  j["cycles"] = cycles_;
  j["class_consumed"] = cls_.consumed();
  json members = json::array();
  for (const FinitePresentation& p : members_) members.push_back(presentation_to_text(p));
  j["members"] = std::move(members);
  j["next_tuple"] = next_tuple_;
  j["pending_total"] = pending_total_;
  json queue = json::array();
  for (const auto& fam : tuple_queue_) {
    json fj = json::array();
    for (const auto& set : fam) {
      json sj = json::array();
      for (const Word& w : set) sj.push_back(word_to_string(base_.alphabet, w));
      fj.push_back(std::move(sj));
    }
    queue.push_back(std::move(fj));
  }
  j["tuple_queue"] = std::move(queue);
  j["discarded"] = discarded_;
  json tracks = json::array();
  for (const Track& t : tracks_) {
    json tj;
    json fj = json::array();
    for (const auto& set : t.tuple) {
      json sj = json::array();
      for (const Word& w : set) sj.push_back(word_to_string(base_.alphabet, w));
      fj.push_back(std::move(sj));
    }
    tj["tuple"] = std::move(fj);
    tj["K"] = t.K.str();
    tj["rounds"] = t.rounds;
    tj["discarded"] = t.discarded;
    tj["passed"] = t.passed;
    tracks.push_back(std::move(tj));
  }
  j["tracks"] = std::move(tracks);
  json trace = json::array();
  for (const auto& [c, t] : trace_) trace.push_back(json::array({c, t}));
  j["trace"] = std::move(trace);
  return j;
}

Searcher Searcher::restore(FinitePresentation base, OraclePtr oracle, ClassEnumerator cls,
                           SearchBudget budget, ConstantPack pack0, const json& ckpt) {
  if (!ckpt.is_object() || ckpt.value("kind", "") != "search-checkpoint" ||
      ckpt.value("schema", 0) != 1 || ckpt.value("version", 0) != 1)
    throw ParseError("not a version-1 search checkpoint");
  Searcher s(std::move(base), std::move(oracle), std::move(cls), std::move(budget),
             std::move(pack0));
  try {
    s.steps_ = ckpt.at("steps").get<long long>();
    s.cycles_ = ckpt.at("cycles").get<long long>();
    s.cls_.skip_to(ckpt.at("class_consumed").get<long long>());
    for (const auto& m : ckpt.at("members"))
      s.members_.push_back(parse_presentation_text(m.get<std::string>()).presentation);
    s.next_tuple_ = ckpt.at("next_tuple").get<long long>();
    s.pending_total_ = ckpt.at("pending_total").get<int>();
    auto parse_family = [&](const json& fj) {
      std::vector<std::vector<Word>> fam;
      for (const auto& sj : fj) {
        std::vector<Word> set;
        for (const auto& wj : sj)
          set.push_back(parse_plain_word(s.base_.alphabet, wj.get<std::string>()));
        fam.push_back(std::move(set));
      }
      return fam;
    };
    for (const auto& fj : ckpt.at("tuple_queue")) s.tuple_queue_.push_back(parse_family(fj));
    s.discarded_ = ckpt.at("discarded").get<long long>();
    for (const auto& tj : ckpt.at("tracks")) {
      Track t;
      t.tuple = parse_family(tj.at("tuple"));
      t.K = BigInt(tj.at("K").get<std::string>());
      t.rounds = tj.at("rounds").get<long long>();
      t.discarded = tj.at("discarded").get<bool>();
      t.passed = tj.at("passed").get<bool>();
      s.tracks_.push_back(std::move(t));
    }
    for (const auto& e : ckpt.at("trace"))
      s.trace_.emplace_back(e.at(0).get<long long>(), e.at(1).get<int>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("search checkpoint corruption: ") + e.what());
  }
  return s;
}

// --- report serialization ------------------------------------------------------

namespace {

json move_to_json(const Alphabet& a, const TietzeMove& m) {
  json j;
  switch (m.kind) {
    case TietzeMove::Kind::AddRelator:
      j["move"] = "add-relator";
      j["relator"] = word_to_string(a, m.relator);
      break;
    case TietzeMove::Kind::RemoveRelator:
      j["move"] = "remove-relator";
      j["index"] = m.relator_index;
      break;
    case TietzeMove::Kind::AddGenerator:
      j["move"] = "add-generator";
      j["generator"] = m.gen_name;
      j["definition"] = word_to_string(a, m.definition);
      break;
    case TietzeMove::Kind::RemoveGenerator:
      j["move"] = "remove-generator";
      j["generator"] = m.gen_name;
      j["definition"] = word_to_string(a, m.definition);
      break;
  }
  if (!m.certificate.empty()) {
    json cert = json::array();
    for (const ConjugateFactor& f : m.certificate) {
      json fj;
      fj["relator"] = f.relator;
      fj["conjugator"] = word_to_string(a, f.conjugator);
      fj["inverted"] = f.inverted;
      cert.push_back(std::move(fj));
    }
    j["certificate"] = std::move(cert);
  }
  return j;
}

}  // namespace

json search_report_to_json(const Alphabet& base, const SearchReport& r) {
  json j;
  j["kind"] = "search-report";
  j["terminated"] = r.terminated;
  j["K"] = r.K.str();
  json tuple = json::array();
  for (const auto& set : r.tuple) {
    json sj = json::array();
    for (const Word& w : set) sj.push_back(word_to_string(base, w));
    tuple.push_back(std::move(sj));
  }
  j["tuple"] = std::move(tuple);
  json pres = json::array();
  for (const FinitePresentation& p : r.presentations)
    pres.push_back(presentation_to_text(p));
  j["presentations"] = std::move(pres);
  json matches = json::array();
  for (const MatchCertificate& m : r.matches) {
    json mj;
    mj["parabolic"] = m.parabolic;
    mj["class_member"] = m.class_member;
    json path = json::array();
    // moves act on the parabolic presentation's own alphabet
    const Alphabet& pa =
        r.presentations[static_cast<size_t>(m.parabolic)].alphabet;
    for (const TietzeMove& mv : m.path) path.push_back(move_to_json(pa, mv));
    mj["path"] = std::move(path);
    matches.push_back(std::move(mj));
  }
  j["matches"] = std::move(matches);
  j["steps"] = r.steps;
  j["cycles"] = r.cycles;
  j["class_members_seen"] = r.class_members_seen;
  j["tracks_spawned"] = r.tracks_spawned;
  j["tracks_discarded"] = r.tracks_discarded;
  json trace = json::array();
  for (const auto& [c, t] : r.trace) trace.push_back(json::array({c, t}));
  j["trace"] = std::move(trace);
  return j;
}

}  // namespace vk
