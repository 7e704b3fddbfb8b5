#pragma once

#include "purif/partition.hpp"

#include <vector>

namespace purif {

// Bijection on {0..N-1}; images[i] is the image of i.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int N);
  // Representative of a cycle type: cycles laid on consecutive points 0,1,2,... in part order.
  static Permutation from_cycle_type(const Partition& type);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  // (this * other)(i) = this(other(i)).
  Permutation compose(const Permutation& other) const;
  int cycle_count() const;
  Partition cycle_type() const;

  bool operator==(const Permutation& o) const { return images_ == o.images_; }
  auto operator<=>(const Permutation& o) const { return images_ <=> o.images_; }

 private:
  std::vector<int> images_;
};

// Minimal number of transpositions taking tau to sigma: N - #cycles(sigma tau^-1).
int transposition_distance(const Permutation& sigma, const Permutation& tau);

constexpr int kSymmetricGroupCap = 10;

// All of S_N in lexicographic order of images; N <= kSymmetricGroupCap.
std::vector<Permutation> enumerate_permutations(int N);

}  // namespace purif
