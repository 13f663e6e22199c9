#include "vankamp/checks.hpp"

#include <algorithm>
#include <set>

#include "vankamp/cluster.hpp"

namespace vk {

namespace {

long long walk_norm1(const Diagram& d, const std::vector<std::vector<int>>& walks) {
  long long n = 0;
  for (const auto& w : walks)
    for (int dart : w) n += d.label[static_cast<size_t>(dart)].complexity();
  return n;
}

long long walk_norminf(const Diagram& d, const std::vector<std::vector<int>>& walks) {
  long long n = 0;
  for (const auto& w : walks)
    for (int dart : w)
      n = std::max<long long>(n, d.label[static_cast<size_t>(dart)].complexity());
  return n;
}

std::string describe(const RelativePresentation& x, const Diagram& d) {
  return "[area " + std::to_string(d.area()) + ", boundary " +
         hat_word_to_string(x, boundary_word(d)) + "]";
}

}  // namespace

void check_diagram_invariants(const RelativePresentation& x, const Diagram& d, int cap,
                              CorpusCheckReport& report) {
  auto fail = [&](const std::string& what) {
    report.violations.push_back(what + " " + describe(x, d));
  };
  try {
    std::set<int> outer(d.faces[0].begin(), d.faces[0].end());
    const long long boundary_len = static_cast<long long>(d.faces[0].size());
    const long long boundary_norm1 = walk_norm1(d, {d.faces[0]});

    std::vector<Cluster> cs = clusters(x, d);
    report.clusters_seen += static_cast<long long>(cs.size());
    bool all_simply_connected = true;
    for (size_t ci = 0; ci < cs.size(); ++ci) {
      const Cluster& c = cs[ci];
      const std::string where = "cluster " + std::to_string(ci);
      // interior cluster-boundary edges are forced onto pairing cells
      for (const auto& walk : c.boundary_walks)
        for (int dart : walk)
          if (!outer.count(dart) && !outer.count(dart ^ 1) &&
              d.label[static_cast<size_t>(dart)].complexity() != 1)
            fail(where + ": interior boundary edge of complexity > 1");
      const long long len = c.boundary_length();
      const long long area_c = static_cast<long long>(c.faces.size());
      if (area_c < len - 2)
        fail(where + ": area " + std::to_string(area_c) + " below boundary length - 2");
      if (c.simply_connected) {
        const long long n1 = walk_norm1(d, c.boundary_walks);
        if (n1 > 3 * d.area() + boundary_norm1)
          fail(where + ": |dC|_1 = " + std::to_string(n1) +
               " exceeds 3 Area(D) + |dD|_1");
        if (!c.complicated) {
          if (walk_norminf(d, c.boundary_walks) > len)
            fail(where + ": |dC|_inf exceeds boundary length");
          if (n1 > 2 * len) fail(where + ": |dC|_1 exceeds twice the boundary length");
        }
      } else {
        all_simply_connected = false;
      }
    }

    if (all_simply_connected) {
      Diagram refilled = refill_standard(x, d, cap);
      ++report.refills;
      std::vector<std::string> bad = validate(x, refilled);
      for (const std::string& v : bad) fail("refill invalid: " + v);
      if (bad.empty()) {
        if (boundary_word(refilled) != boundary_word(d))
          fail("refill changed the boundary word");
        if (refilled.area() > d.area()) fail("refill increased the area");
        std::vector<Cluster> rcs = clusters(x, refilled);
        bool tame = true;
        for (const Cluster& c : rcs) {
          const long long want = std::max<long long>(1, c.boundary_length() - 2);
          if (static_cast<long long>(c.faces.size()) != want)
            fail("refilled cluster misses the exact filling area");
          if (!c.simply_connected || c.complicated) tame = false;
        }
        if (tame && refilled.area() > 0) {
          long long norminf = 0;
          for (const Diagram& tc : thick_components(refilled))
            norminf = std::max(norminf, measure(tc).norminf);
          if (norminf > 6 * refilled.area())
            fail("refilled diagram breaks |D_thick|_inf <= 6 Area(D)");
        }
      }

      Decomposition dec = decompose_pieces(x, d);
      ++report.decompositions;
      const long long pieces = static_cast<long long>(dec.pieces.size());
      const long long arcs = static_cast<long long>(dec.arcs.size());
      if (pieces > std::max<long long>(1, boundary_len))
        fail("piece count exceeds the boundary length");
      if (arcs > boundary_len) fail("arc count exceeds the boundary length");
      if (pieces != arcs + 1) fail("incidence graph is not a tree");
      std::vector<long long> degree(dec.pieces.size(), 0);
      for (auto [pc, pp] : dec.incidence) {
        if (!dec.pieces[static_cast<size_t>(pc)].is_cluster ||
            dec.pieces[static_cast<size_t>(pp)].is_cluster)
          fail("incidence edge is not cluster-to-regular");
        ++degree[static_cast<size_t>(pc)];
        ++degree[static_cast<size_t>(pp)];
      }
      for (size_t pi = 0; pi < dec.pieces.size(); ++pi) {
        if (!dec.pieces[pi].is_cluster) continue;
        const Cluster& c = dec.clusters[static_cast<size_t>(dec.pieces[pi].cluster)];
        if (degree[pi] > c.outer_boundary_edges)
          fail("cluster degree exceeds its outer boundary edge count");
        if (degree[pi] == 1 && pieces > 1 && c.outer_boundary_edges <= 1)
          fail("leaf cluster degree bound is not strict");
      }
    }
  } catch (const Error& e) {
    fail(std::string("exception: ") + e.what());
  }
}

CorpusCheckReport check_corpus(const RelativePresentation& x, const EnumerationCaps& caps,
                               int cap) {
  CorpusCheckReport report;
  enumerate_thick_diagrams(x, caps, [&](const Diagram& d) {
    ++report.diagrams;
    check_diagram_invariants(x, d, cap, report);
    return true;
  });
  return report;
}

nlohmann::json corpus_check_to_json(const CorpusCheckReport& r) {
  return nlohmann::json{{"diagrams", r.diagrams},
                        {"clusters", r.clusters_seen},
                        {"decompositions", r.decompositions},
                        {"refills", r.refills},
                        {"violations", r.violations}};
}

}  // namespace vk
