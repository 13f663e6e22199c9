#pragma once

#include <vector>

#include "vankamp/errors.hpp"

namespace vk {

/// Low-level helpers for planar combinatorial maps encoded on darts
/// 0..2E-1. The edge involution is implicit: opposite(d) = d XOR 1. A map is
/// stored primarily as its face walks (the cycles of the face permutation
/// phi); the vertex rotation sigma is derived via sigma[x] = phi[opposite(x)].

inline int dart_opposite(int d) { return d ^ 1; }

/// Decomposes a permutation (given as an image vector) into its cycles. Each
/// cycle starts at its minimal element; cycles sorted by that element.
std::vector<std::vector<int>> permutation_orbits(const std::vector<int>& perm);

/// Face permutation from face walks: phi[w[i]] = w[i+1] cyclically. Throws
/// InternalInvariantError unless the walks partition 0..ndarts-1.
std::vector<int> face_permutation(const std::vector<std::vector<int>>& faces, int ndarts);

/// Vertex rotation from face walks: sigma[x] = phi[x ^ 1].
std::vector<int> sigma_from_faces(const std::vector<std::vector<int>>& faces, int ndarts);

/// Number of vertices (orbits of sigma).
int vertex_count(const std::vector<int>& sigma);

/// True iff the map is connected: darts form one component under the
/// relation generated by d ~ sigma[d] and d ~ d^1. Maps with 0 darts count
/// as connected.
bool map_connected(const std::vector<int>& sigma);

/// True iff Euler's formula V - E + F = 2 holds (genus 0 on the sphere).
bool genus_zero(const std::vector<int>& sigma, int face_count);

struct UnionFind {
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
    for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
  std::vector<int> parent;
};

}  // namespace vk
