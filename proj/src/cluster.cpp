#include "vankamp/cluster.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>

namespace vk {

namespace {

std::vector<int> face_of_dart(const Diagram& d) {
  std::vector<int> face_of(static_cast<size_t>(d.dart_count()), -1);
  for (size_t f = 0; f < d.faces.size(); ++f)
    for (int t : d.faces[f]) face_of[static_cast<size_t>(t)] = static_cast<int>(f);
  return face_of;
}

std::vector<int> vertex_of_dart(const std::vector<int>& sigma) {
  std::vector<int> vertex_of(sigma.size(), -1);
  auto orbits = permutation_orbits(sigma);
  for (size_t v = 0; v < orbits.size(); ++v)
    for (int t : orbits[v]) vertex_of[static_cast<size_t>(t)] = static_cast<int>(v);
  return vertex_of;
}

}  // namespace

std::vector<Cluster> clusters(const RelativePresentation& x, const Diagram& d) {
  (void)x;
  int nfaces = static_cast<int>(d.faces.size());
  std::vector<int> face_of = face_of_dart(d);
  auto is_para = [&](int f) {
    return f >= 1 && d.tags[static_cast<size_t>(f)].kind == RelatorKind::Parabolic;
  };

  UnionFind uf(nfaces);
  for (int e = 0; 2 * e < d.dart_count(); ++e) {
    int fa = face_of[static_cast<size_t>(2 * e)];
    int fb = face_of[static_cast<size_t>(2 * e + 1)];
    if (is_para(fa) && is_para(fb)) uf.unite(fa, fb);
  }
  std::map<int, std::vector<int>> groups;
  for (int f = 1; f < nfaces; ++f)
    if (is_para(f)) groups[uf.find(f)].push_back(f);

  std::vector<int> sigma = d.sigma();
  std::vector<int> vertex_of = vertex_of_dart(sigma);

  std::vector<std::pair<int, Cluster>> ordered;
  for (auto& [root, faces] : groups) {
    (void)root;
    Cluster c;
    c.parabolic = d.tags[static_cast<size_t>(faces[0])].parabolic;
    c.faces = faces;
    ExtractedSubmap sub = extract_submap(d, faces);
    for (int u : sub.untagged) {
      std::vector<int> walk;
      for (int t : sub.faces[static_cast<size_t>(u)])
        walk.push_back(sub.to_old[static_cast<size_t>(t)]);
      c.boundary_walks.push_back(std::move(walk));
    }
    // Simply connected: one boundary cycle visiting no vertex twice.
    c.simply_connected = c.boundary_walks.size() == 1;
    if (c.simply_connected) {
      std::set<int> seen;
      for (int t : c.boundary_walks[0])
        if (!seen.insert(vertex_of[static_cast<size_t>(t)]).second) c.simply_connected = false;
    }
    for (const auto& walk : c.boundary_walks) {
      for (int t : walk) {
        if (face_of[static_cast<size_t>(t)] == 0) {
          ++c.outer_boundary_edges;
        } else if (d.label[static_cast<size_t>(t)].complexity() != 1) {
          // The far side of an interior cluster-boundary edge is forced to
          // be a pairing cell, so the label is a single generator.
          throw InternalInvariantError(
              "cluster boundary edge off the diagram boundary has complexity > 1");
        }
      }
    }
    c.complicated = c.outer_boundary_edges >= 2;
    int least = d.dart_count();
    for (int f : faces)
      for (int t : d.faces[static_cast<size_t>(f)]) least = std::min(least, t);
    ordered.emplace_back(least, std::move(c));
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Cluster> out;
  for (auto& [least, c] : ordered) {
    (void)least;
    out.push_back(std::move(c));
  }
  return out;
}

Diagram standard_filling(const RelativePresentation& x, int i, const HatWord& boundary, int cap) {
  int n = static_cast<int>(boundary.size());
  if (n < 3) throw ParseError("standard filling needs a boundary of length >= 3");
  std::vector<HatLetter> a;  // canonicalized letters a_1..a_n
  for (const HatLetter& l : boundary.letters) {
    if (l.kind != HatLetter::PLetter || l.parabolic != i)
      throw ParseError("standard filling boundary must consist of parabolic letters of one index");
    a.push_back(x.make_pletter(i, l.geodesic, cap));
  }
  if (!x.hat_trivial(boundary)) throw ParseError("standard filling boundary product is not trivial");

  // Prefix letters g_j for the product a_1...a_j, j = 2..n-1.
  std::vector<HatLetter> g(static_cast<size_t>(n));
  Word prefix = a[0].geodesic;
  for (int j = 2; j <= n - 1; ++j) {
    prefix = prefix.concat(a[static_cast<size_t>(j - 1)].geodesic);
    if (j <= n - 2 && x.oracle().is_trivial(prefix))
      throw DegeneratePrefix("trivial prefix product in standard filling at length " +
                                 std::to_string(j),
                             j);
    g[static_cast<size_t>(j)] = x.make_pletter(i, prefix, cap);
  }

  RelatorClass tag{RelatorKind::Parabolic, i};
  Diagram d;
  if (n == 3) {
    d = attach_face(x, Diagram::empty(), 0, 0,
                    {x.letter_inverse(a[2], cap), x.letter_inverse(a[1], cap),
                     x.letter_inverse(a[0], cap)},
                    tag, cap);
  } else {
    // First triangle closes the prefix of length 2; its outer dart labeled
    // g_2^-1 is dart 1 by construction of attach_face.
    d = attach_face(x, Diagram::empty(), 0, 0,
                    {g[2], x.letter_inverse(a[1], cap), x.letter_inverse(a[0], cap)}, tag, cap);
    int glue_dart = 1;
    for (int j = 2; j <= n - 2; ++j) {
      const auto& outer = d.faces[0];
      int pos = -1;
      for (size_t k = 0; k < outer.size(); ++k)
        if (outer[k] == glue_dart) pos = static_cast<int>(k);
      if (pos < 0) throw InternalInvariantError("standard filling lost its fan edge");
      int n0 = d.dart_count();
      std::vector<HatLetter> fresh;
      if (j == n - 2) {
        // Last triangle: g_j^-1 . a_{j+1} . a_n read along the boundary.
        fresh = {x.letter_inverse(a[static_cast<size_t>(n - 1)], cap),
                 x.letter_inverse(a[static_cast<size_t>(j)], cap)};
      } else {
        fresh = {g[static_cast<size_t>(j + 1)], x.letter_inverse(a[static_cast<size_t>(j)], cap)};
      }
      d = attach_face(x, d, pos, 1, fresh, tag, cap);
      glue_dart = n0 + 1;
    }
  }

  // Rotate the base so the boundary reads the input word exactly.
  HatWord want;
  want.letters = a;
  const auto& outer = d.faces[0];
  for (size_t r = 0; r < outer.size(); ++r) {
    Diagram cand = rebase(d, outer[r]);
    if (boundary_word(cand) == want) {
      require_valid(x, cand);
      return cand;
    }
  }
  throw InternalInvariantError("standard filling boundary does not read the input word");
}

Diagram replace_disk(const RelativePresentation& x, const Diagram& d,
                     const std::vector<int>& face_ids, const Diagram& filling, int) {
  if (face_ids.empty()) throw ParseError("replace_disk: empty face set");
  ExtractedSubmap sub = extract_submap(d, face_ids);
  if (sub.untagged.size() != 1) throw ParseError("replace_disk: face set is not a disk");
  std::vector<int> b;  // complement-side boundary darts, host ids
  for (int t : sub.faces[static_cast<size_t>(sub.untagged[0])])
    b.push_back(sub.to_old[static_cast<size_t>(t)]);
  int m = static_cast<int>(b.size());

  const std::vector<int>& o = filling.faces.at(0);
  if (static_cast<int>(o.size()) != m)
    throw ParseError("replace_disk: filling boundary length mismatch");

  int offset = -1;
  for (int r = 0; r < m && offset < 0; ++r) {
    bool ok = true;
    for (int k = 0; k < m && ok; ++k)
      ok = filling.label[static_cast<size_t>(o[static_cast<size_t>((r + k) % m)])] ==
           d.label[static_cast<size_t>(b[static_cast<size_t>(k)])];
    if (ok) offset = r;
  }
  if (offset < 0) throw ParseError("replace_disk: filling boundary word does not match the hole");

  // Map filling darts into the host: boundary darts alias host boundary
  // darts, interior edges get fresh host ids past the current dart count.
  std::vector<int> fmap(static_cast<size_t>(filling.dart_count()), -1);
  for (int k = 0; k < m; ++k) {
    int ofd = o[static_cast<size_t>((offset + k) % m)];
    fmap[static_cast<size_t>(ofd)] = b[static_cast<size_t>(k)];
    fmap[static_cast<size_t>(ofd ^ 1)] = b[static_cast<size_t>(k)] ^ 1;
  }
  std::vector<HatLetter> label = d.label;
  int next = d.dart_count();
  for (int e = 0; 2 * e < filling.dart_count(); ++e) {
    if (fmap[static_cast<size_t>(2 * e)] != -1) continue;
    fmap[static_cast<size_t>(2 * e)] = next;
    fmap[static_cast<size_t>(2 * e + 1)] = next + 1;
    label.push_back(filling.label[static_cast<size_t>(2 * e)]);
    label.push_back(filling.label[static_cast<size_t>(2 * e + 1)]);
    next += 2;
  }

  std::vector<std::vector<int>> faces;
  std::vector<RelatorClass> tags;
  std::set<int> removed(face_ids.begin(), face_ids.end());
  faces.push_back(d.faces[0]);
  tags.push_back(RelatorClass{});
  for (size_t f = 1; f < d.faces.size(); ++f) {
    if (removed.count(static_cast<int>(f))) continue;
    faces.push_back(d.faces[f]);
    tags.push_back(d.tags[f]);
  }
  for (size_t f = 1; f < filling.faces.size(); ++f) {
    std::vector<int> walk;
    for (int t : filling.faces[f]) walk.push_back(fmap[static_cast<size_t>(t)]);
    faces.push_back(std::move(walk));
    tags.push_back(filling.tags[f]);
  }

  // Compact: darts of deleted interior edges disappear.
  std::vector<char> used(static_cast<size_t>(next), 0);
  for (const auto& w : faces)
    for (int t : w) used[static_cast<size_t>(t)] = used[static_cast<size_t>(t ^ 1)] = 1;
  std::vector<int> renum(static_cast<size_t>(next), -1);
  Diagram out;
  for (int e = 0; 2 * e < next; ++e) {
    if (!used[static_cast<size_t>(2 * e)]) continue;
    renum[static_cast<size_t>(2 * e)] = static_cast<int>(out.label.size());
    renum[static_cast<size_t>(2 * e + 1)] = static_cast<int>(out.label.size()) + 1;
    out.label.push_back(label[static_cast<size_t>(2 * e)]);
    out.label.push_back(label[static_cast<size_t>(2 * e + 1)]);
  }
  for (auto& w : faces) {
    for (int& t : w) t = renum[static_cast<size_t>(t)];
    out.faces.push_back(std::move(w));
  }
  out.tags = std::move(tags);
  require_valid(x, out);
  return out;
}

namespace {

// A single parabolic bigon whose boundary reads the two given letters.
Diagram bigon_filling(const RelativePresentation& x, int i, const HatLetter& l0,
                      const HatLetter& l1, int cap) {
  Diagram d = attach_face(x, Diagram::empty(), 0, 0,
                          {x.letter_inverse(l1, cap), x.letter_inverse(l0, cap)},
                          RelatorClass{RelatorKind::Parabolic, i}, cap);
  const auto& outer = d.faces[0];
  for (int t : outer)
    if (d.label[static_cast<size_t>(t)] == l0) return rebase(d, t);
  throw InternalInvariantError("bigon filling lost its boundary letter");
}

}  // namespace

Diagram refill_standard(const RelativePresentation& x, const Diagram& d, int cap) {
  Diagram cur = d;
  for (size_t guard = 0; guard <= d.faces.size() + 1; ++guard) {
    std::vector<Cluster> cs = clusters(x, cur);
    bool replaced = false;
    for (const Cluster& c : cs) {
      if (!c.simply_connected) throw ParseError("refill_standard: cluster is not simply connected");
      const std::vector<int>& b = c.boundary_walks[0];
      HatWord wb;
      for (int t : b) wb.letters.push_back(cur.label[static_cast<size_t>(t)]);

      // Standalone cluster diagram for the standardness comparison.
      ExtractedSubmap sub = extract_submap(cur, c.faces);
      Diagram standalone;
      standalone.label = sub.label;
      standalone.faces.push_back(sub.faces[static_cast<size_t>(sub.untagged[0])]);
      standalone.tags.push_back(RelatorClass{});
      for (size_t f = 0; f < sub.faces.size(); ++f) {
        if (static_cast<int>(f) == sub.untagged[0]) continue;
        standalone.faces.push_back(sub.faces[f]);
        standalone.tags.push_back(sub.tags[f]);
      }

      // Standard means isomorphic to the standard filling of some rotation
      // of the boundary word (the boundary circle has no basepoint).
      std::vector<long long> canon = canonical_form(standalone);
      bool standard = false;
      bool have = false;
      Diagram candidate;
      std::unique_ptr<DegeneratePrefix> degenerate;
      size_t m = wb.size();
      for (size_t r = 0; r < m && !standard; ++r) {
        HatWord rot;
        for (size_t k = 0; k < m; ++k) rot.letters.push_back(wb.letters[(r + k) % m]);
        Diagram filling;
        if (m == 2) {
          filling = bigon_filling(x, c.parabolic, rot.letters[0], rot.letters[1], cap);
        } else {
          try {
            filling = standard_filling(x, c.parabolic, rot, cap);
          } catch (const DegeneratePrefix& e) {
            if (!degenerate) degenerate = std::make_unique<DegeneratePrefix>(e);
            continue;
          }
        }
        if (canonical_form(filling) == canon) {
          standard = true;
        } else if (!have) {
          candidate = std::move(filling);
          have = true;
        }
      }
      if (standard) continue;
      if (!have) throw *degenerate;
      cur = replace_disk(x, cur, c.faces, candidate, cap);
      replaced = true;
      break;
    }
    if (!replaced) return cur;
  }
  throw InternalInvariantError("refill_standard did not converge");
}

Decomposition decompose_pieces(const RelativePresentation& x, const Diagram& d) {
  Decomposition out;
  out.clusters = clusters(x, d);
  for (const Cluster& c : out.clusters)
    if (!c.simply_connected)
      throw ParseError("decompose_pieces: cluster is not simply connected");

  int nfaces = static_cast<int>(d.faces.size());
  int nedges = d.edge_count();
  int ndarts = d.dart_count();
  std::vector<int> face_of = face_of_dart(d);
  std::vector<int> sigma = d.sigma();

  std::vector<char> in_comp_cluster(static_cast<size_t>(nfaces), 0);
  std::vector<int> cluster_piece(out.clusters.size(), -1);
  for (size_t ci = 0; ci < out.clusters.size(); ++ci) {
    if (!out.clusters[ci].complicated) continue;
    for (int f : out.clusters[ci].faces) in_comp_cluster[static_cast<size_t>(f)] = 1;
  }
  auto edge_in_closure = [&](int e) {
    return in_comp_cluster[static_cast<size_t>(face_of[static_cast<size_t>(2 * e)])] ||
           in_comp_cluster[static_cast<size_t>(face_of[static_cast<size_t>(2 * e + 1)])];
  };

  // Components of the diagram cut along arcs pushed slightly inside the
  // complicated clusters (the alternative reading of the decomposition).
  // Everything outside the clusters that meets at a vertex stays connected
  // through it, so the components are the vertex-connected components of
  // the non-cluster material.
  std::vector<int> vertex_of = vertex_of_dart(sigma);
  int nverts = 0;
  for (int v : vertex_of) nverts = std::max(nverts, v + 1);
  int base_edges = nfaces;
  int base_verts = nfaces + nedges;
  UnionFind uf(nfaces + nedges + nverts);
  for (int f = 1; f < nfaces; ++f) {
    if (in_comp_cluster[static_cast<size_t>(f)]) continue;
    for (int t : d.faces[static_cast<size_t>(f)])
      uf.unite(f, base_verts + vertex_of[static_cast<size_t>(t)]);
  }
  for (int e = 0; e < nedges; ++e) {
    if (edge_in_closure(e)) continue;
    uf.unite(base_edges + e, base_verts + vertex_of[static_cast<size_t>(2 * e)]);
    uf.unite(base_edges + e, base_verts + vertex_of[static_cast<size_t>(2 * e + 1)]);
  }
  (void)ndarts;

  // Regular pieces: components holding at least one non-cluster face or one
  // edge; pieces list = complicated clusters first, then regular pieces.
  for (size_t ci = 0; ci < out.clusters.size(); ++ci) {
    if (!out.clusters[ci].complicated) continue;
    Piece p;
    p.is_cluster = true;
    p.cluster = static_cast<int>(ci);
    p.faces = out.clusters[ci].faces;
    cluster_piece[ci] = static_cast<int>(out.pieces.size());
    out.pieces.push_back(std::move(p));
  }
  std::map<int, int> root_to_piece;
  auto piece_of_root = [&](int root) {
    auto it = root_to_piece.find(root);
    if (it != root_to_piece.end()) return it->second;
    int idx = static_cast<int>(out.pieces.size());
    Piece p;
    out.pieces.push_back(std::move(p));
    root_to_piece.emplace(root, idx);
    return idx;
  };
  for (int f = 1; f < nfaces; ++f) {
    if (in_comp_cluster[static_cast<size_t>(f)]) continue;
    out.pieces[static_cast<size_t>(piece_of_root(uf.find(f)))].faces.push_back(f);
  }
  for (int e = 0; e < nedges; ++e) {
    if (edge_in_closure(e)) continue;
    bool thick = face_of[static_cast<size_t>(2 * e)] != 0 || face_of[static_cast<size_t>(2 * e + 1)] != 0;
    if (!thick)
      out.pieces[static_cast<size_t>(piece_of_root(uf.find(base_edges + e)))].edges.push_back(e);
  }

  // Direct edge contact between two distinct complicated clusters leaves a
  // thin strip between their pushed-in arcs; the strip connects the edge's
  // two endpoints through non-cluster territory.
  std::vector<int> cluster_of_face(static_cast<size_t>(nfaces), -1);
  for (size_t ci = 0; ci < out.clusters.size(); ++ci)
    if (out.clusters[ci].complicated)
      for (int f : out.clusters[ci].faces)
        cluster_of_face[static_cast<size_t>(f)] = static_cast<int>(ci);
  for (int e = 0; e < nedges; ++e) {
    int ca = cluster_of_face[static_cast<size_t>(face_of[static_cast<size_t>(2 * e)])];
    int cb = cluster_of_face[static_cast<size_t>(face_of[static_cast<size_t>(2 * e + 1)])];
    if (ca >= 0 && cb >= 0 && ca != cb)
      uf.unite(base_verts + vertex_of[static_cast<size_t>(2 * e)],
               base_verts + vertex_of[static_cast<size_t>(2 * e + 1)]);
  }

  // Arcs: maximal boundary runs of each complicated cluster avoiding edges
  // of the diagram boundary. Where two of the cluster's boundary edges lie
  // on the diagram boundary around a common vertex without being consecutive
  // on the outer walk, the cluster only pinches the diagram at that vertex,
  // and the contact is recorded as a zero-length arc there.
  std::vector<int> next_outer(static_cast<size_t>(ndarts), -1);
  {
    const std::vector<int>& ow = d.faces[0];
    int om = static_cast<int>(ow.size());
    for (int i = 0; i < om; ++i)
      next_outer[static_cast<size_t>(ow[static_cast<size_t>(i)])] =
          ow[static_cast<size_t>((i + 1) % om)];
  }
  for (size_t ci = 0; ci < out.clusters.size(); ++ci) {
    const Cluster& c = out.clusters[ci];
    if (!c.complicated) continue;
    const std::vector<int>& walk = c.boundary_walks[0];
    int m = static_cast<int>(walk.size());
    auto on_outer = [&](int k) { return face_of[static_cast<size_t>(walk[static_cast<size_t>(k)])] == 0; };
    auto component_at = [&](int t) {
      int pf = face_of[static_cast<size_t>(t)];
      if (pf != 0 && cluster_of_face[static_cast<size_t>(pf)] < 0) return uf.find(pf);
      return uf.find(base_verts + vertex_of[static_cast<size_t>(t)]);
    };
    auto emit = [&](std::vector<int> darts, int piece) {
      ArcOfCluster arc;
      arc.cluster = static_cast<int>(ci);
      arc.darts = std::move(darts);
      arc.piece = piece;
      out.incidence.emplace_back(cluster_piece[ci], piece);
      out.arcs.push_back(std::move(arc));
    };
    int anchor = -1;
    for (int k = 0; k < m; ++k)
      if (on_outer(k)) anchor = k;
    if (anchor < 0) throw InternalInvariantError("complicated cluster without boundary edges");
    std::vector<int> run;
    for (int step = 1; step <= m; ++step) {
      int k = (anchor + step) % m;
      if (!on_outer(k)) {
        run.push_back(walk[static_cast<size_t>(k)]);
        continue;
      }
      if (!run.empty()) {
        int piece = piece_of_root(component_at(run[0]));
        emit(std::move(run), piece);
        run = {};
      } else {
        // The previous walk position was also on the diagram boundary.
        int prev = walk[static_cast<size_t>((anchor + step - 1) % m)];
        if (next_outer[static_cast<size_t>(prev)] != walk[static_cast<size_t>(k)])
          emit({}, piece_of_root(uf.find(
                       base_verts + vertex_of[static_cast<size_t>(walk[static_cast<size_t>(k)])])));
      }
    }
  }

  // Counting facts: bipartite tree, size bounds, degree bounds.
  size_t np = out.pieces.size();
  size_t na = out.arcs.size();
  long long blen = static_cast<long long>(d.faces[0].size());
  if (np > 0) {
    if (na + 1 != np) throw InternalInvariantError("piece incidence graph is not a tree (count)");
    UnionFind tuf(static_cast<int>(np));
    for (auto& [a, b] : out.incidence) tuf.unite(a, b);
    int root = tuf.find(0);
    for (size_t p = 1; p < np; ++p)
      if (tuf.find(static_cast<int>(p)) != root)
        throw InternalInvariantError("piece incidence graph is not connected");
    if (static_cast<long long>(np) > blen || static_cast<long long>(na) > blen)
      throw InternalInvariantError("piece or arc count exceeds the boundary length");
    std::vector<int> degree(np, 0);
    for (auto& [a, b] : out.incidence) {
      ++degree[static_cast<size_t>(a)];
      ++degree[static_cast<size_t>(b)];
    }
    for (size_t ci = 0; ci < out.clusters.size(); ++ci) {
      if (cluster_piece[ci] < 0) continue;
      int deg = degree[static_cast<size_t>(cluster_piece[ci])];
      int bd = out.clusters[ci].outer_boundary_edges;
      bool leaf = deg == 1;
      if (deg > bd || (leaf && deg >= bd))
        throw InternalInvariantError("cluster degree bound violated");
    }
  }
  return out;
}

}  // namespace vk
