#include "purif/characters.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace purif {
namespace {

using Key = std::pair<std::vector<int>, std::vector<int>>;

std::mutex cache_mutex;
std::map<Key, BigInt>& cache() {
  static std::map<Key, BigInt> c;
  return c;
}

// Rim-hook removal on beta numbers b_i = lambda_i + (L - 1 - i).
BigInt mn(const std::vector<int>& lambda, const std::vector<int>& mu) {
  if (mu.empty()) return lambda.empty() ? 1 : 0;
  Key key{lambda, mu};
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache().find(key);
    if (it != cache().end()) return it->second;
  }
  const int r = mu.back();
  std::vector<int> rest(mu.begin(), mu.end() - 1);
  const int L = static_cast<int>(lambda.size());
  std::vector<int> beta(L);
  for (int i = 0; i < L; ++i) beta[i] = lambda[i] + (L - 1 - i);
  BigInt total = 0;
  for (int i = 0; i < L; ++i) {
    int nb = beta[i] - r;
    if (nb < 0) continue;
    if (std::find(beta.begin(), beta.end(), nb) != beta.end()) continue;
    int height = 0;
    for (int j = 0; j < L; ++j)
      if (beta[j] > nb && beta[j] < beta[i]) ++height;
    std::vector<int> nbeta(beta);
    nbeta[i] = nb;
    std::sort(nbeta.rbegin(), nbeta.rend());
    std::vector<int> shape;
    for (int j = 0; j < L; ++j) {
      int part = nbeta[j] - (L - 1 - j);
      if (part > 0) shape.push_back(part);
    }
    BigInt sub = mn(shape, rest);
    if (height % 2) total -= sub;
    else total += sub;
  }
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache().emplace(std::move(key), total);
  return total;
}

}  // namespace

BigInt character(const Partition& lambda, const Partition& mu) {
  if (lambda.weight() != mu.weight()) throw std::invalid_argument("character: weight mismatch");
  return mn(lambda.parts(), mu.parts());
}

}  // namespace purif
