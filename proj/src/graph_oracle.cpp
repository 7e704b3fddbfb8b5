#include "purif/graph_oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace purif {

std::uint64_t pack_key(const std::vector<int>& v) {
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < v.size(); ++i) k |= static_cast<std::uint64_t>(v[i]) << (4 * i);
  return k;
}

bool CommutantGraph::adjacent(int u, int v) const {
  auto b = neighbors.begin() + offsets[u];
  auto e = neighbors.begin() + offsets[u + 1];
  return std::binary_search(b, e, static_cast<std::uint32_t>(v));
}

int CommutantGraph::representative(const Partition& cycle_class) const {
  if (cycle_class.weight() != N) throw std::invalid_argument("walk target class must be a partition of N");
  Permutation sigma = Permutation::from_cycle_type(cycle_class);
  std::vector<int> key = beta == 2 ? sigma.images() : Pairing::from_permutation(sigma).partners();
  return lookup.at(pack_key(key));
}

Partition CommutantGraph::vertex_class(int v) const {
  if (beta == 2) return Permutation(vertices[v]).cycle_type();
  return Pairing(vertices[v]).coset_type();
}

CommutantGraph build_graph(int beta, int N) {
  if (beta != 1 && beta != 2) throw std::invalid_argument("build_graph: beta must be 1 or 2");
  if (N < 1 || N > kOracleCap)
    throw std::out_of_range("build_graph: N = " + std::to_string(N) + " outside the oracle cap 1.." +
                            std::to_string(kOracleCap));
  CommutantGraph g;
  g.beta = beta;
  g.N = N;
  if (beta == 2) {
    for (auto& p : enumerate_permutations(N)) g.vertices.push_back(p.images());
  } else {
    for (auto& p : enumerate_pairings(N)) g.vertices.push_back(p.partners());
  }
  for (int v = 0; v < g.size(); ++v) g.lookup.emplace(pack_key(g.vertices[v]), v);
  g.offsets.assign(1, 0);
  std::vector<std::uint32_t> nb;
  for (int v = 0; v < g.size(); ++v) {
    nb.clear();
    const auto& x = g.vertices[v];
    if (beta == 2) {
      for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
          auto y = x;
          std::swap(y[i], y[j]);
          nb.push_back(static_cast<std::uint32_t>(g.lookup.at(pack_key(y))));
        }
    } else {
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < 2 * N; ++i)
        if (i < x[i]) pairs.emplace_back(i, x[i]);
      for (std::size_t s = 0; s < pairs.size(); ++s)
        for (std::size_t t = s + 1; t < pairs.size(); ++t) {
          auto [a, b] = pairs[s];
          auto [c, d] = pairs[t];
          for (int alt = 0; alt < 2; ++alt) {
            auto y = x;
            int u = alt == 0 ? c : d;
            int w = alt == 0 ? d : c;
            y[a] = u;
            y[u] = a;
            y[b] = w;
            y[w] = b;
            nb.push_back(static_cast<std::uint32_t>(g.lookup.at(pack_key(y))));
          }
        }
    }
    std::sort(nb.begin(), nb.end());
    g.neighbors.insert(g.neighbors.end(), nb.begin(), nb.end());
    g.offsets.push_back(static_cast<std::uint32_t>(g.neighbors.size()));
  }
  std::vector<int> ref(beta == 2 ? N : 2 * N);
  if (beta == 2) ref = Permutation::identity(N).images();
  else ref = Pairing::reference(N).partners();
  g.reference_index = g.lookup.at(pack_key(ref));
  return g;
}

std::vector<std::vector<BigInt>> walk_counts_from_reference(const CommutantGraph& g, int order) {
  if (order < 0) throw std::invalid_argument("walk order must be non-negative");
  std::vector<std::vector<BigInt>> out;
  std::vector<BigInt> v(g.size(), 0);
  v[g.reference_index] = 1;
  out.push_back(v);
  for (int l = 1; l <= order; ++l) {
    std::vector<BigInt> w(g.size(), 0);
    for (int u = 0; u < g.size(); ++u) {
      if (sgn(v[u]) == 0) continue;
      for (auto k = g.offsets[u]; k < g.offsets[u + 1]; ++k) w[g.neighbors[k]] += v[u];
    }
    v = std::move(w);
    out.push_back(v);
  }
  return out;
}

WalkSeries walk_series(const CommutantGraph& g, const Partition& target_class, int order) {
  WalkSeries s;
  s.source = g.reference_index;
  s.target = g.representative(target_class);
  auto counts = walk_counts_from_reference(g, order);
  for (int l = 0; l <= order; ++l)
    s.coefficients.push_back(ExactScalar(counts[l][s.target]) / ExactScalar(factorial(static_cast<unsigned>(l))));
  return s;
}

BigInt m_coefficient_oracle(int beta, int n, int l) {
  auto g = build_graph(beta, n);
  auto counts = walk_counts_from_reference(g, l);
  return counts[l][g.representative(Partition{n})];
}

BigInt omega_coefficient_oracle(int N, int l) {
  auto g = build_graph(1, N);
  auto counts = walk_counts_from_reference(g, l);
  return counts[l][g.reference_index];
}

bool reference_annihilated(const CommutantGraph& g, const std::vector<BigInt>& eigenvalues) {
  std::vector<BigInt> v(g.size(), 0);
  v[g.reference_index] = 1;
  for (const auto& ev : eigenvalues) {
    std::vector<BigInt> w(g.size(), 0);
    for (int u = 0; u < g.size(); ++u) {
      if (sgn(v[u]) == 0) continue;
      for (auto k = g.offsets[u]; k < g.offsets[u + 1]; ++k) w[g.neighbors[k]] += v[u];
      w[u] -= ev * v[u];
    }
    v = std::move(w);
  }
  return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return sgn(x) == 0; });
}

}  // namespace purif
