#include "vankamp/diagram.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace vk {

namespace {

std::vector<int> rotate_to_front(std::vector<int> walk, int dart) {
  auto it = std::find(walk.begin(), walk.end(), dart);
  if (it != walk.end()) std::rotate(walk.begin(), it, walk.end());
  return walk;
}

std::vector<int> rebase_outer(std::vector<int> walk, int preferred) {
  if (walk.empty()) return walk;
  if (std::find(walk.begin(), walk.end(), preferred) != walk.end())
    return rotate_to_front(std::move(walk), preferred);
  return rotate_to_front(std::move(walk), *std::min_element(walk.begin(), walk.end()));
}

}  // namespace

std::vector<std::string> validate(const RelativePresentation& x, const Diagram& d) {
  std::vector<std::string> out;
  int n = d.dart_count();
  if (n % 2 != 0) {
    out.push_back("odd number of darts");
    return out;
  }
  if (d.faces.empty()) {
    out.push_back("no faces (missing outer walk)");
    return out;
  }
  if (d.tags.size() != d.faces.size()) {
    out.push_back("tag list size differs from face list size");
    return out;
  }
  if (d.tags[0].is_relator()) out.push_back("outer face carries a relator tag");

  try {
    face_permutation(d.faces, n);
  } catch (const InternalInvariantError& e) {
    out.push_back(e.what());
    return out;
  }

  const Alphabet& alpha = x.alphabet();
  for (int e = 0; 2 * e < n; ++e) {
    int dart = 2 * e;
    for (int t : {dart, dart + 1}) {
      const HatLetter& l = d.label[static_cast<size_t>(t)];
      if (l.kind == HatLetter::SLetter) {
        if (!alpha.is_generator(l.sym)) out.push_back("dart " + std::to_string(t) + ": bad symbol");
      } else {
        if (l.parabolic < 0 || l.parabolic >= x.parabolic_count()) {
          out.push_back("dart " + std::to_string(t) + ": parabolic index out of range");
          continue;
        }
        if (l.geodesic.empty()) {
          out.push_back("dart " + std::to_string(t) + ": identity parabolic letter");
          continue;
        }
        try {
          auto canon = x.parabolic(l.parabolic)
                           .canonical_geodesic(l.geodesic, static_cast<int>(l.geodesic.size()));
          if (!canon || *canon != l.geodesic)
            out.push_back("dart " + std::to_string(t) + ": parabolic letter not canonical");
        } catch (const Error& e) {
          out.push_back("dart " + std::to_string(t) + ": " + e.what());
        }
      }
    }
    try {
      const HatLetter& l = d.label[static_cast<size_t>(dart)];
      if (x.letter_inverse(l, l.complexity()) != d.label[static_cast<size_t>(dart + 1)])
        out.push_back("edge " + std::to_string(e) + ": labels are not mutually inverse");
    } catch (const Error& err) {
      out.push_back("edge " + std::to_string(e) + ": " + err.what());
    }
  }
  if (!out.empty()) return out;

  std::vector<int> sigma = d.sigma();
  if (!map_connected(sigma)) out.push_back("map is not connected");
  if (!genus_zero(sigma, static_cast<int>(d.faces.size()))) out.push_back("map is not planar (genus != 0)");
  if (n > 0 && d.faces[0].empty()) out.push_back("outer walk empty on a nonempty map");
  if (n == 0 && d.faces.size() != 1) out.push_back("empty map must have a single empty outer walk");

  for (size_t f = 1; f < d.faces.size(); ++f) {
    size_t len = d.faces[f].size();
    if (len < 2 || len > 3) {
      out.push_back("face " + std::to_string(f) + ": boundary length " + std::to_string(len) +
                    " outside {2,3}");
      continue;
    }
    if (!d.tags[f].is_relator()) {
      out.push_back("face " + std::to_string(f) + ": untagged bounded face");
      continue;
    }
    RelatorClass got = x.classify_relator(face_word(d, static_cast<int>(f)));
    if (!(got == d.tags[f]))
      out.push_back("face " + std::to_string(f) + ": boundary word does not classify to its tag");
  }
  return out;
}

void require_valid(const RelativePresentation& x, const Diagram& d) {
  auto v = validate(x, d);
  if (v.empty()) return;
  std::ostringstream msg;
  msg << "invalid diagram:";
  for (const auto& s : v) msg << " [" << s << "]";
  throw InternalInvariantError(msg.str());
}

HatWord face_word(const Diagram& d, int f) {
  HatWord w;
  for (int t : d.faces.at(static_cast<size_t>(f))) w.letters.push_back(d.label.at(static_cast<size_t>(t)));
  return w;
}

HatWord boundary_word(const Diagram& d) { return face_word(d, 0); }

Measure measure(const Diagram& d) {
  Measure m;
  m.area = d.area();
  std::vector<int> face_of(static_cast<size_t>(d.dart_count()), -1);
  for (size_t f = 0; f < d.faces.size(); ++f)
    for (int t : d.faces[f]) face_of[static_cast<size_t>(t)] = static_cast<int>(f);
  m.is_thick = true;
  for (int e = 0; 2 * e < d.dart_count(); ++e) {
    long long c = d.label[static_cast<size_t>(2 * e)].complexity();
    m.norm1 += c;
    m.norminf = std::max(m.norminf, c);
    if (face_of[static_cast<size_t>(2 * e)] == 0 && face_of[static_cast<size_t>(2 * e + 1)] == 0)
      m.is_thick = false;
  }
  return m;
}

Diagram rebase(const Diagram& d, int dart) {
  Diagram out = d;
  auto it = std::find(out.faces[0].begin(), out.faces[0].end(), dart);
  if (it == out.faces[0].end()) throw ParseError("rebase dart is not on the outer walk");
  std::rotate(out.faces[0].begin(), it, out.faces[0].end());
  return out;
}

Diagram attach_face(const RelativePresentation& x, const Diagram& d, int start, int glued,
                    const std::vector<HatLetter>& fresh, RelatorClass tag, int cap) {
  const std::vector<int>& outer = d.faces.at(0);
  int m = static_cast<int>(outer.size());
  if (glued < 0 || glued > m) throw ParseError("glued run longer than the outer walk");
  if (m == 0 ? start != 0 : (start < 0 || start >= m))
    throw ParseError("attach position outside the outer walk");
  if (glued + static_cast<int>(fresh.size()) < 2)
    throw ParseError("attached face would have boundary length < 2");

  Diagram out;
  out.label = d.label;
  int n0 = d.dart_count();
  int nf = static_cast<int>(fresh.size());
  for (const HatLetter& l : fresh) {
    out.label.push_back(l);
    out.label.push_back(x.letter_inverse(l, cap));
  }

  std::vector<int> face_walk, new_outer;
  for (int i = 0; i < glued; ++i) face_walk.push_back(outer[static_cast<size_t>((start + i) % std::max(m, 1))]);
  for (int i = 0; i < nf; ++i) face_walk.push_back(n0 + 2 * i);
  for (int i = glued; i < m; ++i) new_outer.push_back(outer[static_cast<size_t>((start + i) % m)]);
  for (int i = nf - 1; i >= 0; --i) new_outer.push_back(n0 + 2 * i + 1);

  out.faces.push_back(rebase_outer(std::move(new_outer), d.base_dart()));
  out.tags.push_back(RelatorClass{});
  for (size_t f = 1; f < d.faces.size(); ++f) {
    out.faces.push_back(d.faces[f]);
    out.tags.push_back(d.tags[f]);
  }
  out.faces.push_back(std::move(face_walk));
  out.tags.push_back(tag);
  return out;
}

Diagram attach_pendant(const RelativePresentation& x, const Diagram& d, int corner,
                       const HatLetter& letter, int cap) {
  const std::vector<int>& outer = d.faces.at(0);
  int m = static_cast<int>(outer.size());
  if (m == 0 ? corner != 0 : (corner < 0 || corner >= m))
    throw ParseError("pendant corner outside the outer walk");
  Diagram out = d;
  int f = d.dart_count();
  out.label.push_back(letter);
  out.label.push_back(x.letter_inverse(letter, cap));
  std::vector<int> walk;
  for (int i = 0; i < corner; ++i) walk.push_back(outer[static_cast<size_t>(i)]);
  walk.push_back(f);
  walk.push_back(f + 1);
  for (int i = corner; i < m; ++i) walk.push_back(outer[static_cast<size_t>(i)]);
  out.faces[0] = rebase_outer(std::move(walk), d.base_dart());
  return out;
}

Diagram glue_diagrams(const RelativePresentation& x, const Diagram& a, int pos_a,
                      const Diagram& b, int pos_b, int glued, int cap,
                      std::vector<int>* b_to_out) {
  const std::vector<int>& wa = a.faces.at(0);
  const std::vector<int>& wb = b.faces.at(0);
  int ma = static_cast<int>(wa.size());
  int mb = static_cast<int>(wb.size());
  if (glued < 0 || glued > ma || glued > mb) throw ParseError("glued run longer than a boundary");
  if (ma == 0 ? pos_a != 0 : (pos_a < 0 || pos_a >= ma)) throw ParseError("glue position outside a's outer walk");
  if (mb == 0 ? pos_b != 0 : (pos_b < 0 || pos_b >= mb)) throw ParseError("glue position outside b's outer walk");

  // b dart B[pos_b + i] identifies with the opposite of a dart A[pos_a + glued - 1 - i].
  std::vector<int> b_image(static_cast<size_t>(b.dart_count()), -1);
  for (int i = 0; i < glued; ++i) {
    int bd = wb[static_cast<size_t>((pos_b + i) % mb)];
    int ad = wa[static_cast<size_t>((pos_a + glued - 1 - i) % ma)];
    const HatLetter& la = a.label[static_cast<size_t>(ad)];
    const HatLetter& lb = b.label[static_cast<size_t>(bd)];
    if (!(x.letter_inverse(la, cap) == lb))
      throw ParseError("glued boundary runs are not labeled by inverse words");
    if (b_image[static_cast<size_t>(bd)] != -1 || b_image[static_cast<size_t>(bd ^ 1)] != -1)
      throw ParseError("degenerate gluing: a b-edge is identified twice");
    b_image[static_cast<size_t>(bd)] = ad ^ 1;
    b_image[static_cast<size_t>(bd ^ 1)] = ad;
  }

  Diagram out;
  out.label = a.label;
  int next = a.dart_count();
  for (int e = 0; 2 * e < b.dart_count(); ++e) {
    if (b_image[static_cast<size_t>(2 * e)] != -1) continue;
    b_image[static_cast<size_t>(2 * e)] = next;
    b_image[static_cast<size_t>(2 * e + 1)] = next + 1;
    out.label.push_back(b.label[static_cast<size_t>(2 * e)]);
    out.label.push_back(b.label[static_cast<size_t>(2 * e + 1)]);
    next += 2;
  }

  std::vector<int> outer;
  for (int i = glued; i < ma; ++i) outer.push_back(wa[static_cast<size_t>((pos_a + i) % ma)]);
  for (int i = glued; i < mb; ++i)
    outer.push_back(b_image[static_cast<size_t>(wb[static_cast<size_t>((pos_b + i) % mb)])]);
  out.faces.push_back(rebase_outer(std::move(outer), a.dart_count() == 0 ? -1 : a.base_dart()));
  out.tags.push_back(RelatorClass{});
  for (size_t f = 1; f < a.faces.size(); ++f) {
    out.faces.push_back(a.faces[f]);
    out.tags.push_back(a.tags[f]);
  }
  for (size_t f = 1; f < b.faces.size(); ++f) {
    std::vector<int> walk;
    for (int t : b.faces[f]) walk.push_back(b_image[static_cast<size_t>(t)]);
    out.faces.push_back(std::move(walk));
    out.tags.push_back(b.tags[f]);
  }
  if (b_to_out) *b_to_out = b_image;
  return out;
}

ExtractedSubmap extract_submap(const Diagram& d, const std::vector<int>& face_ids) {
  std::set<int> kept;
  for (int f : face_ids) {
    if (f <= 0 || f >= static_cast<int>(d.faces.size()))
      throw ParseError("extract_submap: bad face id");
    for (int t : d.faces[static_cast<size_t>(f)]) {
      kept.insert(t);
      kept.insert(t ^ 1);
    }
  }

  ExtractedSubmap out;
  std::map<int, int> to_new;
  for (int e = 0; 2 * e < d.dart_count(); ++e) {
    if (!kept.count(2 * e)) continue;
    int ne = static_cast<int>(out.to_old.size());
    to_new[2 * e] = ne;
    to_new[2 * e + 1] = ne + 1;
    out.to_old.push_back(2 * e);
    out.to_old.push_back(2 * e + 1);
    out.label.push_back(d.label[static_cast<size_t>(2 * e)]);
    out.label.push_back(d.label[static_cast<size_t>(2 * e + 1)]);
  }

  std::vector<int> sigma = d.sigma();
  auto restricted_sigma = [&](int t) {
    int s = sigma[static_cast<size_t>(t)];
    while (!kept.count(s)) s = sigma[static_cast<size_t>(s)];
    return s;
  };
  // phi'(t) = sigma'(t ^ 1), in new dart ids.
  std::vector<int> phi(out.to_old.size());
  for (size_t nt = 0; nt < out.to_old.size(); ++nt)
    phi[nt] = to_new.at(restricted_sigma(out.to_old[nt] ^ 1));
  auto walks = permutation_orbits(phi);

  // Selected faces reappear verbatim; match them and keep their stored
  // starting darts, then append the remaining orbits as untagged walks.
  std::set<size_t> used;
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
    out.faces.push_back(std::move(walk));
    out.tags.push_back(d.tags[static_cast<size_t>(f)]);
  }
  for (size_t w = 0; w < walks.size(); ++w) {
    if (used.count(w)) continue;
    out.untagged.push_back(static_cast<int>(out.faces.size()));
    out.faces.push_back(walks[w]);
    out.tags.push_back(RelatorClass{});
  }
  return out;
}

std::vector<Diagram> thick_components(const Diagram& d) {
  int nfaces = static_cast<int>(d.faces.size());
  if (nfaces <= 1) return {};
  std::vector<int> sigma = d.sigma();
  std::vector<int> vertex_of(static_cast<size_t>(d.dart_count()), -1);
  auto vorbits = permutation_orbits(sigma);
  for (size_t v = 0; v < vorbits.size(); ++v)
    for (int t : vorbits[v]) vertex_of[static_cast<size_t>(t)] = static_cast<int>(v);

  UnionFind uf(nfaces);
  std::vector<int> face_at_vertex(vorbits.size(), -1);
  for (int f = 1; f < nfaces; ++f) {
    for (int t : d.faces[static_cast<size_t>(f)]) {
      for (int tt : {t, t ^ 1}) {
        int v = vertex_of[static_cast<size_t>(tt)];
        if (face_at_vertex[static_cast<size_t>(v)] == -1)
          face_at_vertex[static_cast<size_t>(v)] = f;
        else
          uf.unite(face_at_vertex[static_cast<size_t>(v)], f);
      }
    }
  }

  std::map<int, std::vector<int>> comps;  // root -> face ids
  for (int f = 1; f < nfaces; ++f) comps[uf.find(f)].push_back(f);
  // Deterministic order: by least dart of the component.
  std::vector<std::pair<int, std::vector<int>>> ordered;
  for (auto& [root, ids] : comps) {
    int least = d.dart_count();
    for (int f : ids)
      for (int t : d.faces[static_cast<size_t>(f)]) least = std::min(least, t);
    ordered.emplace_back(least, ids);
  }
  std::sort(ordered.begin(), ordered.end());

  std::vector<Diagram> out;
  for (auto& [least, ids] : ordered) {
    (void)least;
    ExtractedSubmap sub = extract_submap(d, ids);
    if (sub.untagged.size() != 1)
      throw InternalInvariantError("thick component is not a disk");
    Diagram comp;
    comp.label = sub.label;
    int u = sub.untagged[0];
    std::vector<int> outer = sub.faces[static_cast<size_t>(u)];
    comp.faces.push_back(rotate_to_front(std::move(outer),
                                         *std::min_element(sub.faces[static_cast<size_t>(u)].begin(),
                                                           sub.faces[static_cast<size_t>(u)].end())));
    comp.tags.push_back(RelatorClass{});
    for (size_t f = 0; f < sub.faces.size(); ++f) {
      if (static_cast<int>(f) == u) continue;
      comp.faces.push_back(sub.faces[f]);
      comp.tags.push_back(sub.tags[f]);
    }
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<long long> canonical_form(const Diagram& d) {
  int n = d.dart_count();
  if (n == 0) return {};
  std::vector<int> sigma = d.sigma();
  std::vector<std::pair<long long, long long>> tagcode(static_cast<size_t>(n));
  for (size_t f = 0; f < d.faces.size(); ++f)
    for (int t : d.faces[f])
      tagcode[static_cast<size_t>(t)] =
          f == 0 ? std::make_pair(-2LL, -2LL)
                 : std::make_pair(static_cast<long long>(d.tags[f].kind),
                                  static_cast<long long>(d.tags[f].parabolic));

  std::vector<long long> best;
  for (int start = 0; start < n; ++start) {
    std::vector<int> newid(static_cast<size_t>(n), -1);
    std::vector<int> order;
    newid[static_cast<size_t>(start)] = 0;
    order.push_back(start);
    for (size_t q = 0; q < order.size(); ++q) {
      int x = order[q];
      for (int nb : {x ^ 1, sigma[static_cast<size_t>(x)]}) {
        if (newid[static_cast<size_t>(nb)] == -1) {
          newid[static_cast<size_t>(nb)] = static_cast<int>(order.size());
          order.push_back(nb);
        }
      }
    }
    std::vector<long long> trace;
    for (int x : order) {
      trace.push_back(newid[static_cast<size_t>(x ^ 1)]);
      trace.push_back(newid[static_cast<size_t>(sigma[static_cast<size_t>(x)])]);
      const HatLetter& l = d.label[static_cast<size_t>(x)];
      if (l.kind == HatLetter::SLetter) {
        trace.push_back(0);
        trace.push_back(l.sym);
      } else {
        trace.push_back(1);
        trace.push_back(l.parabolic);
        trace.push_back(static_cast<long long>(l.geodesic.size()));
        for (Sym s : l.geodesic.syms) trace.push_back(s);
      }
      trace.push_back(tagcode[static_cast<size_t>(x)].first);
      trace.push_back(tagcode[static_cast<size_t>(x)].second);
    }
    if (best.empty() || trace < best) best = std::move(trace);
  }
  return best;
}

}  // namespace vk
