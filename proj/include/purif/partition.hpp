#pragma once

#include "purif/exact.hpp"

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace purif {

class Partition {
 public:
  Partition() = default;
  // Parts must be positive and non-increasing; throws std::invalid_argument otherwise.
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts);

  // Builds from multiplicities r[j-1] = #{i : lambda_i = j}.
  static Partition from_multiplicities(const std::vector<int>& r);
  // n^k 1^(N - n k): k cycles of length n padded with fixed points.
  static Partition cycle_class(int N, int n, int k);

  const std::vector<int>& parts() const { return parts_; }
  int weight() const { return weight_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

  // r[j-1] for j = 1..largest part.
  std::vector<int> multiplicities() const;
  Partition conjugate() const;
  // Doubles every part: 2 lambda.
  Partition doubled() const;

  // z_lambda = prod_j j^{r_j} r_j!.
  BigInt z() const;
  // Number of standard Young tableaux, N! / prod hooks.
  BigInt dimension() const;
  BigInt hook_product() const;

  // Partial order: true when lambda >= mu in dominance.
  bool dominates(const Partition& mu) const;

  std::string to_string() const;

  auto operator<=>(const Partition& other) const { return parts_ <=> other.parts_; }
  bool operator==(const Partition& other) const { return parts_ == other.parts_; }

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

// All partitions of N, in reverse-lexicographic order: (N), (N-1,1), (N-2,2), ...
std::vector<Partition> partitions_of(int N);

Partition conjugate(const Partition& lambda);
BigInt irrep_dimension(const Partition& lambda);

struct PartitionHash {
  std::size_t operator()(const Partition& p) const noexcept;
};

}  // namespace purif
