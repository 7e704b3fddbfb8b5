#include "purif/pairing.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

namespace purif {

Pairing::Pairing(std::vector<int> partner) : partner_(std::move(partner)) {
  if (partner_.size() % 2) throw std::invalid_argument("pairing needs an even index set");
  const int M = static_cast<int>(partner_.size());
  for (int i = 0; i < M; ++i) {
    int j = partner_[i];
    if (j < 0 || j >= M || j == i || partner_[j] != i) throw std::invalid_argument("not a perfect matching");
  }
}

Pairing Pairing::from_pairs(int N, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> partner(2 * N, -1);
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= 2 * N || b >= 2 * N || partner[a] != -1 || partner[b] != -1)
      throw std::invalid_argument("from_pairs: invalid pair list");
    partner[a] = b;
    partner[b] = a;
  }
  return Pairing(partner);
}

Pairing Pairing::reference(int N) { return from_permutation(Permutation::identity(N)); }

Pairing Pairing::from_permutation(const Permutation& sigma) {
  const int N = sigma.size();
  std::vector<int> partner(2 * N);
  for (int i = 0; i < N; ++i) {
    partner[i] = N + sigma(i);
    partner[N + sigma(i)] = i;
  }
  return Pairing(partner);
}

std::vector<std::pair<int, int>> Pairing::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < static_cast<int>(partner_.size()); ++i)
    if (i < partner_[i]) out.emplace_back(i, partner_[i]);
  return out;
}

Permutation Pairing::as_permutation() const { return Permutation(partner_); }

Partition Pairing::coset_type() const {
  const int n = N();
  std::vector<char> seen(partner_.size(), 0);
  std::vector<int> lens;
  for (int start = 0; start < 2 * n; ++start) {
    if (seen[start]) continue;
    // Alternate p-edges and reference edges (i <-> N+i).
    int len = 0;
    int v = start;
    do {
      seen[v] = 1;
      int w = partner_[v];
      seen[w] = 1;
      v = w < n ? w + n : w - n;
      ++len;
    } while (v != start);
    lens.push_back(len);
  }
  std::sort(lens.rbegin(), lens.rend());
  return Partition(lens);
}

std::uint64_t Pairing::key() const {
  if (N() > kPairingCap) throw std::out_of_range("pairing key limited to N <= 8");
  std::uint64_t k = 0;
  for (int i = 0; i < static_cast<int>(partner_.size()); ++i) k |= static_cast<std::uint64_t>(partner_[i]) << (4 * i);
  return k;
}

BigInt pairing_count(int N) {
  BigInt r = factorial(2 * N) / factorial(N);
  BigInt two = 2;
  BigInt pw;
  mpz_pow_ui(pw.get_mpz_t(), two.get_mpz_t(), static_cast<unsigned long>(N));
  return r / pw;
}

std::vector<Pairing> enumerate_pairings(int N) {
  if (N < 1) throw std::invalid_argument("enumerate_pairings: N >= 1 required");
  if (N > kPairingCap)
    throw std::out_of_range("oracle scale exceeded: pairings capped at N = " + std::to_string(kPairingCap));
  std::vector<Pairing> out;
  out.reserve(pairing_count(N).get_ui());
  std::vector<int> partner(2 * N, -1);
  std::function<void()> rec = [&]() {
    int first = -1;
    for (int i = 0; i < 2 * N; ++i)
      if (partner[i] < 0) {
        first = i;
        break;
      }
    if (first < 0) {
      out.emplace_back(partner);
      return;
    }
    for (int j = first + 1; j < 2 * N; ++j) {
      if (partner[j] >= 0) continue;
      partner[first] = j;
      partner[j] = first;
      rec();
      partner[first] = -1;
      partner[j] = -1;
    }
  };
  rec();
  return out;
}

}  // namespace purif
