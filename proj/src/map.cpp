#include "vankamp/map.hpp"

#include <algorithm>

namespace vk {

std::vector<std::vector<int>> permutation_orbits(const std::vector<int>& perm) {
  int n = static_cast<int>(perm.size());
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::vector<std::vector<int>> out;
  for (int start = 0; start < n; ++start) {
    if (seen[static_cast<size_t>(start)]) continue;
    std::vector<int> cyc;
    int x = start;
    do {
      if (x < 0 || x >= n || seen[static_cast<size_t>(x)])
        throw InternalInvariantError("image vector is not a permutation");
      seen[static_cast<size_t>(x)] = 1;
      cyc.push_back(x);
      x = perm[static_cast<size_t>(x)];
    } while (x != start);
    out.push_back(std::move(cyc));
  }
  return out;
}

std::vector<int> face_permutation(const std::vector<std::vector<int>>& faces, int ndarts) {
  std::vector<int> phi(static_cast<size_t>(ndarts), -1);
  for (const auto& w : faces) {
    for (size_t i = 0; i < w.size(); ++i) {
      int d = w[i];
      int nxt = w[(i + 1) % w.size()];
      if (d < 0 || d >= ndarts || phi[static_cast<size_t>(d)] != -1)
        throw InternalInvariantError("face walks do not partition the darts");
      phi[static_cast<size_t>(d)] = nxt;
    }
  }
  for (int d = 0; d < ndarts; ++d)
    if (phi[static_cast<size_t>(d)] == -1)
      throw InternalInvariantError("dart missing from every face walk");
  return phi;
}

std::vector<int> sigma_from_faces(const std::vector<std::vector<int>>& faces, int ndarts) {
  std::vector<int> phi = face_permutation(faces, ndarts);
  std::vector<int> sigma(static_cast<size_t>(ndarts));
  for (int x = 0; x < ndarts; ++x) sigma[static_cast<size_t>(x)] = phi[static_cast<size_t>(x ^ 1)];
  return sigma;
}

int vertex_count(const std::vector<int>& sigma) {
  return static_cast<int>(permutation_orbits(sigma).size());
}

bool map_connected(const std::vector<int>& sigma) {
  int n = static_cast<int>(sigma.size());
  if (n == 0) return true;
  UnionFind uf(n);
  for (int d = 0; d < n; ++d) {
    uf.unite(d, sigma[static_cast<size_t>(d)]);
    uf.unite(d, d ^ 1);
  }
  int root = uf.find(0);
  for (int d = 1; d < n; ++d)
    if (uf.find(d) != root) return false;
  return true;
}

bool genus_zero(const std::vector<int>& sigma, int face_count) {
  int e = static_cast<int>(sigma.size()) / 2;
  int v = sigma.empty() ? 1 : vertex_count(sigma);
  return v - e + face_count == 2;
}

}  // namespace vk
