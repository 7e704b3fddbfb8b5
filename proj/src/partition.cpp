#include "purif/partition.hpp"

#include <numeric>
#include <stdexcept>

namespace purif {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition parts must be non-increasing");
  }
  weight_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition::Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

Partition Partition::from_multiplicities(const std::vector<int>& r) {
  std::vector<int> parts;
  for (int j = static_cast<int>(r.size()); j >= 1; --j) {
    if (r[j - 1] < 0) throw std::invalid_argument("negative multiplicity");
    parts.insert(parts.end(), r[j - 1], j);
  }
  return Partition(parts);
}

Partition Partition::cycle_class(int N, int n, int k) {
  if (n < 1 || k < 0 || n * k > N) throw std::invalid_argument("cycle_class: need n k <= N");
  std::vector<int> parts;
  if (n == 1) return Partition(std::vector<int>(N, 1));
  parts.insert(parts.end(), k, n);
  parts.insert(parts.end(), N - n * k, 1);
  return Partition(parts);
}

std::vector<int> Partition::multiplicities() const {
  std::vector<int> r(parts_.empty() ? 0 : parts_.front(), 0);
  for (int p : parts_) ++r[p - 1];
  return r;
}

Partition Partition::conjugate() const {
  std::vector<int> c(parts_.empty() ? 0 : parts_.front(), 0);
  for (int p : parts_)
    for (int i = 0; i < p; ++i) ++c[i];
  return Partition(c);
}

Partition Partition::doubled() const {
  std::vector<int> d(parts_);
  for (int& p : d) p *= 2;
  return Partition(d);
}

BigInt Partition::z() const {
  BigInt r = 1;
  auto m = multiplicities();
  for (std::size_t j = 0; j < m.size(); ++j) {
    BigInt jj = static_cast<unsigned long>(j + 1);
    BigInt pw;
    mpz_pow_ui(pw.get_mpz_t(), jj.get_mpz_t(), static_cast<unsigned long>(m[j]));
    r *= pw * factorial(static_cast<unsigned>(m[j]));
  }
  return r;
}

BigInt Partition::hook_product() const {
  Partition c = conjugate();
  BigInt r = 1;
  for (int i = 0; i < length(); ++i)
    for (int j = 0; j < parts_[i]; ++j) r *= (parts_[i] - j - 1) + (c[j] - i - 1) + 1;
  return r;
}

BigInt Partition::dimension() const { return factorial(static_cast<unsigned>(weight_)) / hook_product(); }

bool Partition::dominates(const Partition& mu) const {
  if (weight_ != mu.weight_) return false;
  int a = 0, b = 0;
  int L = std::max(length(), mu.length());
  for (int i = 0; i < L; ++i) {
    a += (*this)[i];
    b += mu[i];
    if (a < b) return false;
  }
  return true;
}

std::string Partition::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts_[i]);
  }
  return s + ")";
}

std::vector<Partition> partitions_of(int N) {
  if (N < 0) throw std::invalid_argument("partitions_of: negative N");
  std::vector<Partition> out;
  if (N == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<int> a{N};
  while (true) {
    out.emplace_back(a);
    // Next partition in descending lexicographic order.
    int rem = 0;
    while (!a.empty() && a.back() == 1) {
      rem += 1;
      a.pop_back();
    }
    if (a.empty()) break;
    int v = a.back() - 1;
    a.back() = v;
    rem += 1;
    while (rem > v) {
      a.push_back(v);
      rem -= v;
    }
    if (rem > 0) a.push_back(rem);
  }
  return out;
}

Partition conjugate(const Partition& lambda) { return lambda.conjugate(); }
BigInt irrep_dimension(const Partition& lambda) { return lambda.dimension(); }

std::size_t PartitionHash::operator()(const Partition& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int v : p.parts()) {
    h ^= static_cast<std::size_t>(v);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace purif
