#include "vankamp/surgery.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace vk {

namespace {

struct Part {
  Diagram dia;              // faces[0] = the single boundary walk
  std::vector<int> to_old;  // part dart -> host dart
};

// Closed subcomplex spanned by a face set plus extra (pendant) edges,
// required to have a single boundary walk.
Part extract_part(const Diagram& d, const std::vector<int>& face_ids,
                  const std::vector<int>& edge_ids) {
  std::set<int> kept;
  for (int f : face_ids)
    for (int t : d.faces.at(static_cast<size_t>(f))) {
      kept.insert(t);
      kept.insert(t ^ 1);
    }
  for (int e : edge_ids) {
    kept.insert(2 * e);
    kept.insert(2 * e + 1);
  }
  if (kept.empty()) throw ParseError("empty piece");

  Part out;
  std::map<int, int> to_new;
  for (int e = 0; 2 * e < d.dart_count(); ++e) {
    if (!kept.count(2 * e)) continue;
    int ne = static_cast<int>(out.to_old.size());
    to_new[2 * e] = ne;
    to_new[2 * e + 1] = ne + 1;
    out.to_old.push_back(2 * e);
    out.to_old.push_back(2 * e + 1);
    out.dia.label.push_back(d.label[static_cast<size_t>(2 * e)]);
    out.dia.label.push_back(d.label[static_cast<size_t>(2 * e + 1)]);
  }

  std::vector<int> sigma = d.sigma();
  auto restricted_sigma = [&](int t) {
    int s = sigma[static_cast<size_t>(t)];
    while (!kept.count(s)) s = sigma[static_cast<size_t>(s)];
    return s;
  };
  std::vector<int> phi(out.to_old.size());
  for (size_t nt = 0; nt < out.to_old.size(); ++nt)
    phi[nt] = to_new.at(restricted_sigma(out.to_old[nt] ^ 1));
  auto walks = permutation_orbits(phi);

  std::set<size_t> used;
  std::vector<std::vector<int>> selected;
  std::vector<RelatorClass> selected_tags;
  for (int f : face_ids) {
    std::vector<int> walk;
    for (int t : d.faces[static_cast<size_t>(f)]) walk.push_back(to_new.at(t));
    for (size_t w = 0; w < walks.size(); ++w) {
      if (used.count(w) || walks[w].size() != walk.size()) continue;
      if (std::find(walk.begin(), walk.end(), walks[w][0]) != walk.end()) {
        used.insert(w);
        break;
      }
    }
    selected.push_back(std::move(walk));
    selected_tags.push_back(d.tags[static_cast<size_t>(f)]);
  }
  std::vector<std::vector<int>> boundary;
  for (size_t w = 0; w < walks.size(); ++w)
    if (!used.count(w)) boundary.push_back(walks[w]);
  if (boundary.size() != 1) throw ParseError("piece does not have a single boundary walk");

  out.dia.faces.push_back(std::move(boundary[0]));
  out.dia.tags.push_back(RelatorClass{});
  for (size_t k = 0; k < selected.size(); ++k) {
    out.dia.faces.push_back(std::move(selected[k]));
    out.dia.tags.push_back(selected_tags[k]);
  }
  return out;
}

// A standardly filled disk (or a bigon for two-letter words) whose boundary
// reads the given word exactly.
Diagram parabolic_disk(const RelativePresentation& x, int i, const HatWord& w, int cap) {
  if (w.size() != 2) return standard_filling(x, i, w, cap);
  Diagram d = attach_face(x, Diagram::empty(), 0, 0,
                          {x.letter_inverse(w.letters[1], cap), x.letter_inverse(w.letters[0], cap)},
                          RelatorClass{RelatorKind::Parabolic, i}, cap);
  for (int t : d.faces[0]) {
    Diagram cand = rebase(d, t);
    if (boundary_word(cand) == w) return cand;
  }
  throw InternalInvariantError("parabolic bigon does not read its boundary word");
}

// Labels along a run of darts, their product as a parabolic letter, and the
// DegenerateArc check.
HatLetter chord_letter(const RelativePresentation& x, const Diagram& w,
                       const std::vector<int>& run, int parabolic, int arc_id, int cap) {
  Word product;
  for (int t : run) {
    const HatLetter& l = w.label[static_cast<size_t>(t)];
    if (l.kind != HatLetter::PLetter || l.parabolic != parabolic)
      throw InternalInvariantError("arc edge is not labeled by the cluster's subgroup");
    product = product.concat(l.geodesic);
  }
  if (x.oracle().is_trivial(product))
    throw DegenerateArc("arc " + std::to_string(arc_id) + " has a trivial letter product");
  return x.make_pletter(parabolic, product, cap);
}

// Position of `dart` on the outer walk.
int outer_pos(const Diagram& d, int dart) {
  const auto& outer = d.faces[0];
  for (size_t k = 0; k < outer.size(); ++k)
    if (outer[k] == dart) return static_cast<int>(k);
  throw InternalInvariantError("expected dart is not on the outer walk");
}

// Checks that `run` occupies consecutive outer positions starting at the
// first dart and returns that start position.
int run_start(const Diagram& d, const std::vector<int>& run) {
  const auto& outer = d.faces[0];
  int m = static_cast<int>(outer.size());
  int q = outer_pos(d, run[0]);
  for (size_t k = 1; k < run.size(); ++k)
    if (outer[static_cast<size_t>((q + static_cast<int>(k)) % m)] != run[k])
      throw ParseError("arc is not a consecutive run on the boundary walk");
  return q;
}

}  // namespace

ChordedCluster add_chords(const RelativePresentation& x, const Diagram& d,
                          const Decomposition& dec, int cluster_index, int cap) {
  const Cluster& c = dec.clusters.at(static_cast<size_t>(cluster_index));
  if (!c.complicated || !c.simply_connected)
    throw ParseError("add_chords needs a complicated, simply connected cluster");
  for (size_t ai = 0; ai < dec.arcs.size(); ++ai)
    if (dec.arcs[ai].cluster == cluster_index && dec.arcs[ai].darts.empty())
      throw DegenerateArc("arc " + std::to_string(ai) + " is a zero-length vertex contact");

  Part part = extract_part(d, c.faces, {});
  std::map<int, int> to_part;
  for (size_t nt = 0; nt < part.to_old.size(); ++nt) to_part[part.to_old[nt]] = static_cast<int>(nt);

  ChordedCluster out;
  out.cluster = cluster_index;
  std::vector<std::vector<int>> runs;  // part dart ids, stable across glues
  for (size_t ai = 0; ai < dec.arcs.size(); ++ai) {
    if (dec.arcs[ai].cluster != cluster_index) continue;
    out.arc_ids.push_back(static_cast<int>(ai));
    std::vector<int> run;
    for (int t : dec.arcs[ai].darts) run.push_back(to_part.at(t));
    runs.push_back(std::move(run));
  }

  Diagram w = part.dia;
  std::vector<int> chord_darts;
  for (size_t k = 0; k < runs.size(); ++k) {
    const std::vector<int>& run = runs[k];
    int m = static_cast<int>(run.size());
    HatLetter ac = chord_letter(x, w, run, c.parabolic, out.arc_ids[k], cap);
    out.chord.push_back(ac);
    HatWord disk_word;
    disk_word.letters.push_back(ac);
    for (int j = m - 1; j >= 0; --j)
      disk_word.letters.push_back(x.letter_inverse(w.label[static_cast<size_t>(run[static_cast<size_t>(j)])], cap));
    Diagram disk = parabolic_disk(x, c.parabolic, disk_word, cap);
    std::vector<int> bmap;
    w = glue_diagrams(x, w, run_start(w, run), disk, 1, m, cap, &bmap);
    chord_darts.push_back(bmap[static_cast<size_t>(disk.faces[0][0])]);
  }
  require_valid(x, w);
  out.chorded = w;
  for (int t : chord_darts) out.chord_pos.push_back(outer_pos(w, t));

  out.standardized = refill_standard(x, w, cap);
  require_valid(x, out.standardized);
  if (!(boundary_word(out.standardized) == boundary_word(out.chorded)))
    throw InternalInvariantError("re-standardization changed the chorded boundary");
  if (out.standardized.area() !=
      static_cast<long long>(out.standardized.faces[0].size()) - 2)
    throw InternalInvariantError("standardized chorded cluster is not a minimal fan");
  return out;
}

AugmentedPiece augment_piece(const RelativePresentation& x, const Diagram& d,
                             const Decomposition& dec, int piece_index, int cap,
                             const Minimizer& minimize) {
  const Piece& p = dec.pieces.at(static_cast<size_t>(piece_index));
  if (p.is_cluster) throw ParseError("augment_piece takes a regular piece");
  for (size_t ai = 0; ai < dec.arcs.size(); ++ai)
    if (dec.arcs[ai].piece == piece_index && dec.arcs[ai].darts.empty())
      throw DegenerateArc("arc " + std::to_string(ai) + " is a zero-length vertex contact");

  Part part = extract_part(d, p.faces, p.edges);
  std::map<int, int> to_part;
  for (size_t nt = 0; nt < part.to_old.size(); ++nt) to_part[part.to_old[nt]] = static_cast<int>(nt);

  AugmentedPiece out;
  out.piece = piece_index;
  std::vector<std::vector<int>> runs;            // piece-side darts, reversed arc order
  std::vector<std::vector<HatLetter>> letters;   // cluster-side labels l_1..l_m
  for (size_t ai = 0; ai < dec.arcs.size(); ++ai) {
    if (dec.arcs[ai].piece != piece_index) continue;
    out.arc_ids.push_back(static_cast<int>(ai));
    const auto& darts = dec.arcs[ai].darts;
    std::vector<int> run;
    std::vector<HatLetter> ls;
    for (auto it = darts.rbegin(); it != darts.rend(); ++it) run.push_back(to_part.at(*it ^ 1));
    for (int t : darts) ls.push_back(d.label[static_cast<size_t>(t)]);
    runs.push_back(std::move(run));
    letters.push_back(std::move(ls));
  }

  Diagram w = part.dia;
  std::vector<int> chord_darts;
  for (size_t k = 0; k < runs.size(); ++k) {
    int m = static_cast<int>(runs[k].size());
    int parabolic = dec.clusters[static_cast<size_t>(dec.arcs[static_cast<size_t>(out.arc_ids[k])].cluster)].parabolic;
    Word product;
    for (const HatLetter& l : letters[k]) product = product.concat(l.geodesic);
    if (x.oracle().is_trivial(product))
      throw DegenerateArc("arc " + std::to_string(out.arc_ids[k]) + " has a trivial letter product");
    HatLetter ac = x.make_pletter(parabolic, product, cap);
    out.chord.push_back(x.letter_inverse(ac, cap));
    HatWord disk_word;
    for (const HatLetter& l : letters[k]) disk_word.letters.push_back(l);
    disk_word.letters.push_back(x.letter_inverse(ac, cap));
    Diagram disk = parabolic_disk(x, parabolic, disk_word, cap);
    std::vector<int> bmap;
    w = glue_diagrams(x, w, run_start(w, runs[k]), disk, 0, m, cap, &bmap);
    chord_darts.push_back(bmap[static_cast<size_t>(disk.faces[0][static_cast<size_t>(m)])]);
  }
  require_valid(x, w);
  for (const Cluster& c : clusters(x, w))
    if (c.complicated || !c.simply_connected)
      throw InternalInvariantError("augmented piece has a complicated or non-disk cluster");
  out.augmented = w;
  for (int t : chord_darts) out.chord_pos.push_back(outer_pos(w, t));

  out.reduced = w;
  if (minimize) {
    std::optional<Diagram> min = minimize(w);
    if (!min) {
      out.minimization_capped = true;
    } else {
      if (!(boundary_word(*min) == boundary_word(w)))
        throw InternalInvariantError("minimizer changed the boundary word");
      out.reduced = std::move(*min);
    }
  }
  return out;
}

Diagram reglue(const RelativePresentation& x, const Decomposition& dec,
               const std::vector<ChordedCluster>& cs, const std::vector<AugmentedPiece>& ps,
               bool use_reduced, int cap) {
  size_t np = dec.pieces.size();
  // part diagram and per-arc chord position for each piece vertex
  std::vector<const Diagram*> dia(np, nullptr);
  std::vector<const std::vector<int>*> arc_ids(np, nullptr);
  std::vector<const std::vector<int>*> chord_pos(np, nullptr);
  for (const ChordedCluster& c : cs) {
    int v = -1;
    for (size_t pidx = 0; pidx < np; ++pidx)
      if (dec.pieces[pidx].is_cluster && dec.pieces[pidx].cluster == c.cluster)
        v = static_cast<int>(pidx);
    if (v < 0) throw ParseError("chorded cluster does not belong to the decomposition");
    dia[static_cast<size_t>(v)] = use_reduced ? &c.standardized : &c.chorded;
    arc_ids[static_cast<size_t>(v)] = &c.arc_ids;
    chord_pos[static_cast<size_t>(v)] = &c.chord_pos;
  }
  for (const AugmentedPiece& p : ps) {
    dia[static_cast<size_t>(p.piece)] = use_reduced ? &p.reduced : &p.augmented;
    arc_ids[static_cast<size_t>(p.piece)] = &p.arc_ids;
    chord_pos[static_cast<size_t>(p.piece)] = &p.chord_pos;
  }
  for (size_t v = 0; v < np; ++v)
    if (!dia[v]) throw ParseError("parts do not cover the decomposition");
  if (np == 0) throw ParseError("empty decomposition");

  auto chord_dart = [&](int v, int arc) {
    const auto& ids = *arc_ids[static_cast<size_t>(v)];
    for (size_t k = 0; k < ids.size(); ++k)
      if (ids[k] == arc)
        return dia[static_cast<size_t>(v)]->faces[0][static_cast<size_t>(
            (*chord_pos[static_cast<size_t>(v)])[k])];
    throw ParseError("part is missing a chord for an incident arc");
  };

  Diagram w = *dia[0];
  std::vector<char> placed(np, 0);
  placed[0] = 1;
  std::map<int, int> chord_in_w;  // arc id -> dart of w on the placed side
  for (int a : *arc_ids[0]) chord_in_w[a] = chord_dart(0, a);

  size_t done = 1;
  while (done < np) {
    int arc = -1, v = -1;
    for (size_t k = 0; k < dec.arcs.size() && arc < 0; ++k) {
      auto [cv, rv] = dec.incidence[k];
      if (placed[static_cast<size_t>(cv)] != placed[static_cast<size_t>(rv)]) {
        arc = static_cast<int>(k);
        v = placed[static_cast<size_t>(cv)] ? rv : cv;
      }
    }
    if (arc < 0) throw ParseError("parts are not connected by the arcs");
    int pos_w = outer_pos(w, chord_in_w.at(arc));
    const Diagram& pd = *dia[static_cast<size_t>(v)];
    int pos_p = outer_pos(pd, chord_dart(v, arc));
    std::vector<int> bmap;
    try {
      w = glue_diagrams(x, w, pos_w, pd, pos_p, 1, cap, &bmap);
    } catch (const ParseError& e) {
      throw ParseError(std::string("incompatible parts: ") + e.what());
    }
    for (int a : *arc_ids[static_cast<size_t>(v)])
      if (a != arc) chord_in_w[a] = bmap[static_cast<size_t>(chord_dart(v, a))];
    placed[static_cast<size_t>(v)] = 1;
    ++done;
  }
  require_valid(x, w);
  return w;
}

std::vector<Candidate> reduction_candidates(const RelativePresentation& x, const Diagram& d,
                                            int cap, const Minimizer& minimize) {
  require_valid(x, d);
  if (!measure(d).is_thick) throw ParseError("reduction candidates need a thick diagram");
  Decomposition dec = decompose_pieces(x, d);

  std::vector<Candidate> out;
  bool any_complicated = false;
  for (const Piece& p : dec.pieces) any_complicated = any_complicated || p.is_cluster;
  if (!any_complicated) {
    Candidate c;
    c.index = 0;
    c.boundary = boundary_word(d);
    c.diagram = d;
    c.size = measure(d);
    out.push_back(std::move(c));
    return out;
  }

  for (size_t pidx = 0; pidx < dec.pieces.size(); ++pidx) {
    Candidate c;
    if (dec.pieces[pidx].is_cluster) {
      ChordedCluster cc = add_chords(x, d, dec, dec.pieces[pidx].cluster, cap);
      c.from_cluster = true;
      c.index = cc.cluster;
      c.diagram = std::move(cc.standardized);
    } else {
      AugmentedPiece ap = augment_piece(x, d, dec, static_cast<int>(pidx), cap, minimize);
      c.index = ap.piece;
      c.minimization_capped = ap.minimization_capped;
      c.diagram = std::move(ap.reduced);
    }
    c.boundary = boundary_word(c.diagram);
    c.size = measure(c.diagram);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace vk
