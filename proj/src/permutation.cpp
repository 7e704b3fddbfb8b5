#include "purif/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace purif {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int v : images_) {
    if (v < 0 || v >= size() || seen[v]) throw std::invalid_argument("not a bijection");
    seen[v] = 1;
  }
}

Permutation Permutation::identity(int N) {
  std::vector<int> id(N);
  std::iota(id.begin(), id.end(), 0);
  return Permutation(id);
}

Permutation Permutation::from_cycle_type(const Partition& type) {
  std::vector<int> img(type.weight());
  int start = 0;
  for (int len : type.parts()) {
    for (int j = 0; j < len; ++j) img[start + j] = start + (j + 1) % len;
    start += len;
  }
  return Permutation(img);
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < size(); ++i) inv[images_[i]] = i;
  return Permutation(inv);
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) throw std::invalid_argument("compose: size mismatch");
  std::vector<int> r(images_.size());
  for (int i = 0; i < size(); ++i) r[i] = images_[other.images_[i]];
  return Permutation(r);
}

int Permutation::cycle_count() const {
  std::vector<char> seen(images_.size(), 0);
  int cycles = 0;
  for (int i = 0; i < size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (int j = i; !seen[j]; j = images_[j]) seen[j] = 1;
  }
  return cycles;
}

Partition Permutation::cycle_type() const {
  std::vector<char> seen(images_.size(), 0);
  std::vector<int> lens;
  for (int i = 0; i < size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = images_[j]) {
      seen[j] = 1;
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.rbegin(), lens.rend());
  return Partition(lens);
}

int transposition_distance(const Permutation& sigma, const Permutation& tau) {
  if (sigma.size() != tau.size()) throw std::invalid_argument("transposition_distance: size mismatch");
  return sigma.size() - sigma.compose(tau.inverse()).cycle_count();
}

std::vector<Permutation> enumerate_permutations(int N) {
  if (N < 1) throw std::invalid_argument("enumerate_permutations: N >= 1 required");
  if (N > kSymmetricGroupCap)
    throw std::out_of_range("oracle scale exceeded: S_N enumeration capped at N = " +
                            std::to_string(kSymmetricGroupCap));
  std::vector<int> img(N);
  std::iota(img.begin(), img.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

}  // namespace purif
