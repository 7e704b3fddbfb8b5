#pragma once

#include "purif/pairing.hpp"
#include "purif/permutation.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace purif {

// Transposition graph on S_N (beta = 2) or flip graph on pairings P_N (beta = 1).
struct CommutantGraph {
  int beta = 1;
  int N = 0;
  // Permutation images (beta = 2) or pairing partner tables (beta = 1).
  std::vector<std::vector<int>> vertices;
  // CSR adjacency.
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> neighbors;
  int reference_index = 0;
  std::unordered_map<std::uint64_t, int> lookup;

  int size() const { return static_cast<int>(vertices.size()); }
  int degree(int v) const { return static_cast<int>(offsets[v + 1] - offsets[v]); }
  bool adjacent(int u, int v) const;
  // Vertex of the class representative: cycles on consecutive points in part order,
  // acting on starred indices only for beta = 1.
  int representative(const Partition& cycle_class) const;
  // Class of a vertex: cycle type (beta = 2) or coset type (beta = 1).
  Partition vertex_class(int v) const;
};

std::uint64_t pack_key(const std::vector<int>& v);

// Largest N for which the graph is built (8! permutations, 2027025 pairings).
inline constexpr int kOracleCap = 8;

CommutantGraph build_graph(int beta, int N);

struct WalkSeries {
  int source = 0;
  int target = 0;
  // coefficients[l] = [A^l]_{target, source} / l!.
  std::vector<ExactScalar> coefficients;
};

// Walk counts (A^l e_ref) for l = 0..order, as exact integers.
std::vector<std::vector<BigInt>> walk_counts_from_reference(const CommutantGraph& g, int order);

WalkSeries walk_series(const CommutantGraph& g, const Partition& target_class, int order);

// [A^l]_{n-cycle, 1} on the graph of size n.
BigInt m_coefficient_oracle(int beta, int n, int l);
// [A^l]_{1,1} on the flip graph of P_N.
BigInt omega_coefficient_oracle(int N, int l);

// Applies prod_v (A - v) to e_ref; true when the result vanishes identically.
bool reference_annihilated(const CommutantGraph& g, const std::vector<BigInt>& eigenvalues);

}  // namespace purif
