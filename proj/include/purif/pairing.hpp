#pragma once

#include "purif/partition.hpp"
#include "purif/permutation.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace purif {

// Perfect matching of {0..2N-1}; unstarred index i is i, starred i* is N + i.
class Pairing {
 public:
  Pairing() = default;
  // partner[i] is the index paired with i.
  explicit Pairing(std::vector<int> partner);
  static Pairing from_pairs(int N, const std::vector<std::pair<int, int>>& pairs);
  // Reference pairing p_1 = {(i, i*)}.
  static Pairing reference(int N);
  // p_sigma = {(i, sigma(i)*)}: sigma only moves starred indices.
  static Pairing from_permutation(const Permutation& sigma);

  int N() const { return static_cast<int>(partner_.size()) / 2; }
  int partner(int i) const { return partner_[i]; }
  const std::vector<int>& partners() const { return partner_; }

  // Canonical form: (min, max) pairs sorted by first element.
  std::vector<std::pair<int, int>> pairs() const;
  // As an involution of S_{2N}.
  Permutation as_permutation() const;
  // Half-lengths of the cycles of p united with p_1: a partition of N.
  Partition coset_type() const;
  // Packs the partner table in 4 bits per index (N <= 8).
  std::uint64_t key() const;

  bool operator==(const Pairing& o) const { return partner_ == o.partner_; }
  auto operator<=>(const Pairing& o) const { return pairs() <=> o.pairs(); }

 private:
  std::vector<int> partner_;
};

constexpr int kPairingCap = 8;

// (2N)! / (N! 2^N).
BigInt pairing_count(int N);

// All pairings in canonical lexicographic order; N <= kPairingCap.
std::vector<Pairing> enumerate_pairings(int N);

}  // namespace purif
