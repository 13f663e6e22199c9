#include "vankamp/isoperimetry.hpp"

#include <algorithm>
#include <map>

namespace vk {

namespace {

BigInt pow10(int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= 10;
  return r;
}

void fill_formulas(ConstantPack& p) {
  p.Kprime = (600 * p.K) * (600 * p.K);
  p.rho = pow10(26) * p.K * p.K * p.K * p.K * p.K;
  p.B = 2 * pow10(6) * p.K * p.K;
  p.area_cap = 240 * p.K;
  p.proper_bound = 12 * p.K;
}

}  // namespace

ConstantPack ConstantPack::paper(const BigInt& k) {
  if (k < pow10(6)) throw ParseError("paper-faithful packs require K >= 10^6");
  ConstantPack p;
  p.paper_faithful = true;
  p.K = k;
  fill_formulas(p);
  if (p.rho < 3 * p.area_cap)
    throw InternalInvariantError("constant formulas violate rho >= 3 * area_cap");
  return p;
}

ConstantPack ConstantPack::scaled(const BigInt& k, const BigInt& b, const BigInt& area_cap,
                                  const BigInt& proper_bound) {
  if (k < 1) throw ParseError("scaled packs require K >= 1");
  ConstantPack p;
  p.paper_faithful = false;
  p.K = k;
  fill_formulas(p);  // formula values for the derived fields
  p.B = b;
  p.area_cap = area_cap;
  p.proper_bound = proper_bound;
  return p;
}

BigInt ConstantPack::min_area_complexity_bound(const HatWord& w) const {
  return 720 * K + norms(w).norm1;
}

bool ConstantPack::ratio_ok(long long area, long long length) const {
  BigInt lhs = 600 * BigInt(area);
  return lhs * lhs <= K * BigInt(length) * BigInt(length);
}

BigInt ConstantPack::ratio_threshold(long long length) const {
  BigInt s = boost::multiprecision::sqrt(K * BigInt(length) * BigInt(length));
  return s / 600;
}

PaperConstants paper_constants(const BigInt& k) {
  if (k < 1) throw ParseError("constant formulas require K >= 1");
  ConstantPack p;
  p.K = k;
  fill_formulas(p);
  return PaperConstants{p.Kprime, p.rho, p.B, p.area_cap, p.proper_bound};
}

namespace {

/// All hat letters of complexity <= c: the S-letters plus the nonidentity
/// parabolic ball elements (their ball words are already canonical).
std::vector<HatLetter> letter_universe(const RelativePresentation& x, long long c,
                                       int radius_cap) {
  std::vector<HatLetter> out;
  if (c < 1) return out;
  for (Sym s = 0; s < x.alphabet().size(); ++s) out.push_back(HatLetter::s_letter(s));
  for (int i = 0; i < x.parabolic_count(); ++i) {
    if (c > radius_cap) throw Overflow("parabolic ball overflow: complexity cap", radius_cap);
    for (const Word& w : x.parabolic(i).ball(static_cast<int>(c)))
      if (!w.empty()) out.push_back(HatLetter::p_letter(i, w));
  }
  return out;
}

struct RelFace {
  HatWord word;
  RelatorClass tag;
};

/// Every classified relator word of length 2 or 3 over the universe, in all
/// rotations (a face walk may begin at any of its edges).
std::vector<RelFace> relator_faces(const RelativePresentation& x,
                                   const std::vector<HatLetter>& uni) {
  std::vector<RelFace> out;
  size_t n = uni.size();
  auto consider = [&](HatWord w) {
    RelatorClass c = x.classify_relator(w);
    if (c.is_relator()) out.push_back(RelFace{std::move(w), c});
  };
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      consider(HatWord({uni[a], uni[b]}));
      for (size_t c = 0; c < n; ++c) consider(HatWord({uni[a], uni[b], uni[c]}));
    }
  return out;
}

}  // namespace

bool enumerate_layer(const RelativePresentation& x, const EnumerationCaps& caps,
                     EnumerationState& state, const DiagramSink& sink) {
  if (state.next_area > caps.max_area || state.frontier.empty()) return false;
  int lcap = caps.ball_radius_cap;
  std::vector<HatLetter> uni = letter_universe(x, caps.max_complexity, lcap);
  std::vector<RelFace> rel = relator_faces(x, uni);

  std::map<std::vector<long long>, Diagram> layer;
  for (const Diagram& d : state.frontier) {
    const std::vector<int>& outer = d.faces[0];
    int L = static_cast<int>(outer.size());
    for (const RelFace& rf : rel) {
      int f = static_cast<int>(rf.word.size());
      for (int g = 0; g <= std::min(f, L); ++g) {
        if (g == L && g == f && L > 0) continue;  // would close off the outer region
        if (L == 0 && g > 0) break;
        int nstarts = L == 0 ? 1 : L;
        for (int start = 0; start < nstarts; ++start) {
          bool match = true;
          for (int j = 0; j < g && match; ++j)
            match = d.label[static_cast<size_t>(outer[static_cast<size_t>((start + j) % L)])] ==
                    rf.word.letters[static_cast<size_t>(j)];
          if (!match) continue;
          std::vector<HatLetter> fresh(rf.word.letters.begin() + g, rf.word.letters.end());
          Diagram d2 = attach_face(x, d, start, g, fresh, rf.tag, lcap);
          if (!validate(x, d2).empty()) continue;
          auto cf = canonical_form(d2);
          if (state.seen.insert(cf).second) layer.emplace(std::move(cf), std::move(d2));
        }
      }
    }
  }

  bool keep_going = true;
  for (const auto& [cf, d2] : layer) {
    if (static_cast<long long>(d2.faces[0].size()) > caps.max_boundary_length) continue;
    if (keep_going) keep_going = sink(d2);
  }
  state.frontier.clear();
  for (auto& [cf, d2] : layer) state.frontier.push_back(std::move(d2));
  ++state.next_area;
  return keep_going && !state.frontier.empty();
}

void enumerate_thick_diagrams(const RelativePresentation& x, const EnumerationCaps& caps,
                              const DiagramSink& sink) {
  EnumerationState st = EnumerationState::start();
  while (enumerate_layer(x, caps, st, sink)) {
  }
}

std::vector<Diagram> all_thick_diagrams(const RelativePresentation& x,
                                        const EnumerationCaps& caps) {
  std::vector<Diagram> out;
  enumerate_thick_diagrams(x, caps, [&](const Diagram& d) {
    out.push_back(d);
    return true;
  });
  return out;
}

namespace {

constexpr long long kInf = 1'000'000'000'000'000'000LL;

/// One rotation of a thick corpus diagram: `dia` is rebased so its boundary
/// word reads `u` from the base dart.
struct CorpusEntry {
  HatWord u;
  long long area;
  Diagram dia;
};

std::vector<CorpusEntry> corpus_rotations(const std::vector<Diagram>& corpus, size_t max_len) {
  std::map<HatWord, std::pair<long long, Diagram>> best;
  for (const Diagram& t : corpus) {
    if (t.faces[0].size() > max_len) continue;
    for (int dart : t.faces[0]) {
      Diagram r = rebase(t, dart);
      HatWord u = boundary_word(r);
      auto it = best.find(u);
      if (it == best.end() || t.area() < it->second.first)
        best[u] = {t.area(), std::move(r)};
    }
  }
  std::vector<CorpusEntry> out;
  for (auto& [u, p] : best) out.push_back(CorpusEntry{u, p.first, std::move(p.second)});
  return out;
}

/// Interval DP for the minimal filling of w[i..j) as a based loop. A filling
/// is a tree of thick components: adjacent inverse letters fold into a tree
/// edge (CANCEL), cut vertices split the interval (SPLIT), and a thick
/// component consumes its boundary letters in order with loop fillings
/// wedged into the gaps between them (THICK).
struct FillTable {
  int n = 0;
  const HatWord* w = nullptr;
  const std::vector<CorpusEntry>* entries = nullptr;
  // memo[i][j]: cost plus the winning choice.
  struct Cell {
    long long cost = kInf;
    enum { Empty, Cancel, Split, Thick } kind = Empty;
    int split_k = -1;
    int entry = -1;
  };
  std::vector<std::vector<Cell>> memo;

  long long cost(int i, int j) const { return memo[static_cast<size_t>(i)][static_cast<size_t>(j)].cost; }

  /// Match DP for one entry on (i, j): d[k][p] = min gap cost with the first
  /// k letters of u matched and w[i..p) consumed. Returns the table.
  std::vector<std::vector<long long>> match(int i, int j, const CorpusEntry& e) const {
    int m = static_cast<int>(e.u.size());
    std::vector<std::vector<long long>> d(static_cast<size_t>(m + 1),
                                          std::vector<long long>(static_cast<size_t>(j + 1), kInf));
    d[0][static_cast<size_t>(i)] = 0;
    for (int k = 0; k <= m; ++k)
      for (int p = i; p <= j; ++p) {
        long long cur = d[static_cast<size_t>(k)][static_cast<size_t>(p)];
        if (cur >= kInf) continue;
        for (int q = p + 1; q <= j; ++q) {
          if (p == i && q == j) continue;  // a full-interval gap matches nothing
          long long c = cost(p, q);
          if (c >= kInf) continue;
          auto& slot = d[static_cast<size_t>(k)][static_cast<size_t>(q)];
          slot = std::min(slot, cur + c);
        }
        if (k < m && p < j && w->letters[static_cast<size_t>(p)] == e.u.letters[static_cast<size_t>(k)]) {
          auto& slot = d[static_cast<size_t>(k + 1)][static_cast<size_t>(p + 1)];
          slot = std::min(slot, cur);
        }
      }
    return d;
  }

  void compute(const RelativePresentation& x, int cap) {
    memo.assign(static_cast<size_t>(n + 1), std::vector<Cell>(static_cast<size_t>(n + 1)));
    for (int len = 0; len <= n; ++len)
      for (int i = 0; i + len <= n; ++i) {
        int j = i + len;
        Cell& c = memo[static_cast<size_t>(i)][static_cast<size_t>(j)];
        if (len == 0) {
          c.cost = 0;
          c.kind = Cell::Empty;
          continue;
        }
        if (len >= 2 &&
            x.letter_inverse(w->letters[static_cast<size_t>(i)], cap) ==
                w->letters[static_cast<size_t>(j - 1)]) {
          long long v = cost(i + 1, j - 1);
          if (v < c.cost) {
            c.cost = v;
            c.kind = Cell::Cancel;
          }
        }
        for (int k = i + 1; k < j; ++k) {
          long long a = cost(i, k), b = cost(k, j);
          if (a >= kInf || b >= kInf) continue;
          if (a + b < c.cost) {
            c.cost = a + b;
            c.kind = Cell::Split;
            c.split_k = k;
          }
        }
        for (size_t e = 0; e < entries->size(); ++e) {
          const CorpusEntry& ce = (*entries)[e];
          int m = static_cast<int>(ce.u.size());
          if (m > len) continue;
          auto d = match(i, j, ce);
          long long v = d[static_cast<size_t>(m)][static_cast<size_t>(j)];
          if (v >= kInf) continue;
          if (ce.area + v < c.cost) {
            c.cost = ce.area + v;
            c.kind = Cell::Thick;
            c.entry = static_cast<int>(e);
          }
        }
      }
  }

  Diagram build(const RelativePresentation& x, int cap, int i, int j) const {
    const Cell& c = memo[static_cast<size_t>(i)][static_cast<size_t>(j)];
    switch (c.kind) {
      case Cell::Empty:
        return Diagram::empty();
      case Cell::Cancel: {
        Diagram p = attach_pendant(x, Diagram::empty(), 0, w->letters[static_cast<size_t>(i)], cap);
        if (j - i == 2) return p;
        Diagram sub = build(x, cap, i + 1, j - 1);
        return glue_diagrams(x, p, 1, sub, 0, 0, cap);
      }
      case Cell::Split: {
        Diagram a = build(x, cap, i, c.split_k);
        Diagram b = build(x, cap, c.split_k, j);
        return glue_diagrams(x, a, 0, b, 0, 0, cap);
      }
      case Cell::Thick: {
        const CorpusEntry& ce = (*entries)[static_cast<size_t>(c.entry)];
        int m = static_cast<int>(ce.u.size());
        // Recover one optimal gap assignment by walking the match DP back
        // from (m, j).
        auto d = match(i, j, ce);
        std::vector<std::pair<int, std::pair<int, int>>> gaps;  // (corner k, (p, q))
        int k = m, p = j;
        while (k > 0 || p > i) {
          long long cur = d[static_cast<size_t>(k)][static_cast<size_t>(p)];
          if (k > 0 && p > i &&
              w->letters[static_cast<size_t>(p - 1)] == ce.u.letters[static_cast<size_t>(k - 1)] &&
              d[static_cast<size_t>(k - 1)][static_cast<size_t>(p - 1)] == cur) {
            --k;
            --p;
            continue;
          }
          bool found = false;
          for (int q = i; q < p && !found; ++q) {
            if (q == i && p == j) continue;
            long long g = cost(q, p);
            if (g < kInf && d[static_cast<size_t>(k)][static_cast<size_t>(q)] + g == cur) {
              gaps.push_back({k, {q, p}});
              p = q;
              found = true;
            }
          }
          if (!found) throw InternalInvariantError("min_area backtrace lost its optimum");
        }
        // Gaps come out right-to-left, which is the order corner splices
        // need, except at corner 0: splicing there lands at the cyclic end
        // of the walk, so leading gaps must go in left-to-right order (and
        // the reading then starts at the first one).
        std::stable_partition(gaps.begin(), gaps.end(),
                              [](const auto& g) { return g.first > 0; });
        auto zero = std::find_if(gaps.begin(), gaps.end(),
                                 [](const auto& g) { return g.first == 0; });
        std::reverse(zero, gaps.end());
        Diagram out = ce.dia;
        int lead_base = -1;
        for (const auto& [corner, span] : gaps) {
          Diagram g = build(x, cap, span.first, span.second);
          if (g.dart_count() == 0) continue;
          int pos = corner % static_cast<int>(out.faces[0].size());
          std::vector<int> bmap;
          int gbase = g.base_dart();
          out = glue_diagrams(x, out, pos, g, 0, 0, cap, &bmap);
          if (corner == 0 && lead_base < 0) lead_base = bmap[static_cast<size_t>(gbase)];
        }
        if (lead_base >= 0) out = rebase(out, lead_base);
        return out;
      }
    }
    throw InternalInvariantError("min_area build reached an unset cell");
  }
};

}  // namespace

MinAreaResult min_area(const RelativePresentation& x, const HatWord& w,
                       const EnumerationCaps& caps, int cap) {
  if (!x.hat_trivial(w)) throw NotTrivialError("the word bounds no diagram: not trivial in G");
  MinAreaResult res;
  if (w.empty()) {
    res.area = 0;
    res.witness = Diagram::empty();
    return res;
  }
  EnumerationCaps inner = caps;
  inner.max_boundary_length =
      std::min<long long>(static_cast<long long>(w.size()),
                          caps.max_boundary_length > 0 ? caps.max_boundary_length
                                                       : static_cast<long long>(w.size()));
  std::vector<Diagram> corpus = all_thick_diagrams(x, inner);
  std::vector<CorpusEntry> entries = corpus_rotations(corpus, w.size());

  FillTable ft;
  ft.n = static_cast<int>(w.size());
  ft.w = &w;
  ft.entries = &entries;
  ft.compute(x, cap);

  long long best = ft.cost(0, ft.n);
  if (best >= kInf || best > caps.max_area) {
    res.exceeds_caps = true;
    return res;
  }
  res.area = best;
  Diagram witness = ft.build(x, cap, 0, ft.n);
  require_valid(x, witness);
  if (!(boundary_word(witness) == w))
    throw InternalInvariantError("min_area witness does not read the input word");
  if (witness.area() != best)
    throw InternalInvariantError("min_area witness area disagrees with the DP");
  res.witness = std::move(witness);
  return res;
}

Minimizer area_minimizer(const RelativePresentation& x, const EnumerationCaps& caps, int cap) {
  return [&x, caps, cap](const Diagram& d) -> std::optional<Diagram> {
    MinAreaResult r = min_area(x, boundary_word(d), caps, cap);
    if (r.exceeds_caps) return std::nullopt;
    return std::move(r.witness);
  };
}

RoundResult check_round(const RelativePresentation& x, const ConstantPack& pack,
                        long long max_words, int cap) {
  EnumerationCaps caps;
  caps.max_area = pack.area_cap.convert_to<long long>();
  caps.max_complexity = pack.B.convert_to<long long>();
  caps.max_boundary_length = 3 * caps.max_area;
  caps.ball_radius_cap = cap;

  // W(K): boundary words of the corpus, deduplicated as cyclic words, in
  // first-appearance (canonical) order. Each keeps the best known filling
  // area from the corpus as an upper bound.
  std::vector<Diagram> corpus = all_thick_diagrams(x, caps);
  std::map<std::vector<HatLetter>, size_t> index;
  struct Entry {
    HatWord w;
    long long upper;
  };
  std::vector<Entry> words;
  for (const Diagram& d : corpus) {
    HatWord w = boundary_word(d);
    std::vector<HatLetter> key = w.letters;
    for (size_t r = 0; r < w.size(); ++r) {
      std::vector<HatLetter> rot(w.letters.begin() + static_cast<long>(r), w.letters.end());
      rot.insert(rot.end(), w.letters.begin(), w.letters.begin() + static_cast<long>(r));
      key = std::min(key, rot);
    }
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(std::move(key), words.size());
      words.push_back(Entry{std::move(w), d.area()});
    } else {
      words[it->second].upper = std::min(words[it->second].upper, d.area());
    }
  }

  std::vector<CorpusEntry> entries =
      corpus_rotations(corpus, static_cast<size_t>(caps.max_boundary_length));

  RoundResult rr;
  for (const Entry& e : words) {
    if (max_words >= 0 && rr.words_checked >= max_words)
      throw BudgetExhausted("check_round word budget exhausted", rr.words_checked);
    ++rr.words_checked;
    long long len = static_cast<long long>(e.w.size());
    if (pack.ratio_ok(e.upper, len)) continue;  // the corpus bound already passes
    FillTable ft;
    ft.n = static_cast<int>(e.w.size());
    ft.w = &e.w;
    ft.entries = &entries;
    ft.compute(x, cap);
    long long area = ft.cost(0, ft.n);
    if (area > e.upper)
      throw InternalInvariantError("min_area exceeds a known filling of a corpus word");
    if (!pack.ratio_ok(area, len)) {
      rr.pass = false;
      rr.witness = e.w;
      rr.witness_area = area;
      rr.witness_length = len;
      return rr;
    }
  }
  rr.pass = true;
  return rr;
}

FinitePresentation parabolic_presentation(const RelativePresentation& x, int i,
                                          long long length_cap) {
  const SubgroupContext& h = x.parabolic(i);
  const Alphabet& amb = x.alphabet();

  // The subgroup's own alphabet: positive generators in ambient order.
  std::vector<std::string> gens, invol;
  std::vector<Sym> positive;
  for (Sym s : h.sub_syms()) {
    if (amb.inverse(s) == s) {
      gens.push_back(amb.name(s));
      invol.push_back(amb.name(s));
      positive.push_back(s);
    } else if (s < amb.inverse(s)) {
      gens.push_back(amb.name(s));
      positive.push_back(s);
    }
  }
  FinitePresentation out;
  out.alphabet = Alphabet::from_generators(gens, invol);

  std::set<Word> keys;
  // Iterative enumeration of all S_i-words of length <= cap, reduced-only.
  std::vector<Word> frontier = {Word{}};
  for (long long len = 1; len <= length_cap; ++len) {
    std::vector<Word> next;
    for (const Word& p : frontier)
      for (Sym s : h.sub_syms()) {
        if (!p.empty() && amb.inverse(p.syms.back()) == s) continue;
        Word q = p;
        q.syms.push_back(s);
        next.push_back(q);
        if (!x.oracle().is_trivial(q)) continue;
        Word c = cyclic_reduce(amb, q);
        if (c.empty()) continue;
        Word key = std::min(min_rotation(c), min_rotation(word_inverse(amb, c)),
                            [](const Word& u, const Word& v) { return u < v; });
        keys.insert(std::move(key));
      }
    frontier = std::move(next);
  }

  for (const Word& k : keys) {
    Word r;
    for (Sym s : k.syms) {
      auto ns = out.alphabet.find(amb.name(s));
      if (!ns) throw InternalInvariantError("parabolic relator uses a symbol outside S_i");
      r.syms.push_back(*ns);
    }
    out.relators.push_back(std::move(r));
  }
  out.validate();
  return out;
}

PropernessResult properness(const RelativePresentation& x, int i, const ConstantPack& pack,
                            int radius_cap) {
  if (pack.proper_bound > radius_cap)
    throw Overflow("properness ball radius exceeds the radius cap", radius_cap);
  int r = pack.proper_bound.convert_to<int>();
  const SubgroupContext& h = x.parabolic(i);
  std::vector<Word> ball = h.ball(r);

  PropernessResult res;
  for (Sym s = 0; s < x.alphabet().size(); ++s) {
    bool absorbed = false;
    for (const Word& a : ball) {
      if (x.oracle().equal(Word{{s}}, a)) {
        res.absorbs.push_back(Absorption{s, a});
        absorbed = true;
        break;
      }
    }
    if (!absorbed) {
      res.proper = true;
      return res;
    }
  }
  res.proper = false;
  return res;
}

DetectionReport detect(const RelativePresentation& x, const ConstantPack& pack0,
                       const DetectionBudget& budget) {
  DetectionReport rep;
  rep.paper_faithful = pack0.paper_faithful;
  ConstantPack pack = pack0;
  for (long long round = 0; round < budget.max_rounds; ++round) {
    rep.K = pack.K;
    RoundResult rr = check_round(x, pack, budget.max_words_per_round, budget.radius_cap);
    ++rep.rounds_run;
    rep.words_checked += rr.words_checked;
    if (rr.pass) {
      rep.terminated = true;
      for (int i = 0; i < x.parabolic_count(); ++i) {
        ParabolicReport pr;
        pr.presentation_capped = BigInt(budget.relator_length_cap) < pack.rho;
        pr.presentation = parabolic_presentation(x, i, budget.relator_length_cap);
        try {
          PropernessResult p = properness(x, i, pack, budget.radius_cap);
          pr.proper = p.proper;
          pr.absorbs = std::move(p.absorbs);
        } catch (const Overflow&) {
          pr.properness_withheld = true;
        }
        rep.parabolics.push_back(std::move(pr));
      }
      return rep;
    }
    rep.failures.push_back(FailedRound{pack.K, rr.witness, rr.witness_area, rr.witness_length});
    BigInt next_k = pack.K + budget.k_stride;
    if (pack.paper_faithful) {
      pack = ConstantPack::paper(next_k);
    } else {
      pack.K = next_k;  // scaled mode: K moves, the user-set caps stay put
    }
  }
  rep.terminated = false;
  return rep;
}

}  // namespace vk
