#include "purif/symfunc.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <stdexcept>

namespace purif {

ExactScalar SymFunc::coeff(const Partition& lambda) const {
  auto it = coeffs.find(lambda);
  return it == coeffs.end() ? ExactScalar(0) : it->second;
}

void SymFunc::add(const Partition& lambda, const ExactScalar& value) {
  if (lambda.weight() != degree) throw std::invalid_argument("SymFunc: partition weight differs from degree");
  coeffs[lambda] += value;
}

void SymFunc::prune() {
  for (auto it = coeffs.begin(); it != coeffs.end();) {
    if (is_zero(it->second)) it = coeffs.erase(it);
    else ++it;
  }
}

SymFunc power_sum(const Partition& mu) {
  SymFunc f{Basis::power_sum, 1, mu.weight(), {}};
  f.coeffs[mu] = 1;
  return f;
}

SymFunc monomial(const Partition& lambda) {
  SymFunc f{Basis::monomial, 1, lambda.weight(), {}};
  f.coeffs[lambda] = 1;
  return f;
}

ExactScalar inner_product_p(const SymFunc& f, const SymFunc& g, const ExactScalar& alpha) {
  if (f.basis != Basis::power_sum || g.basis != Basis::power_sum)
    throw std::invalid_argument("inner_product_p: both arguments must be in the power-sum basis");
  if (f.degree != g.degree) return 0;
  ExactScalar total = 0;
  for (const auto& [lambda, a] : f.coeffs) {
    auto it = g.coeffs.find(lambda);
    if (it == g.coeffs.end()) continue;
    total += a * it->second * ExactScalar(lambda.z()) * power(alpha, lambda.length());
  }
  return total;
}

ExactScalar c_constant(const Partition& lambda, const ExactScalar& alpha, const ExactScalar& t) {
  Partition c = lambda.conjugate();
  ExactScalar r = 1;
  for (int i = 0; i < lambda.length(); ++i)
    for (int j = 0; j < lambda[i]; ++j) r *= alpha * (lambda[i] - j - 1) + (c[j] - i - 1) + t;
  return r;
}

namespace {

// m_lambda * p_r = sum over distinct values w of lambda (and 0) of mult(w + r) m_{lambda, w -> w + r}.
std::map<Partition, BigInt> times_power(const std::map<Partition, BigInt>& f, int r) {
  std::map<Partition, BigInt> out;
  for (const auto& [lambda, coeff] : f) {
    std::set<int> values(lambda.parts().begin(), lambda.parts().end());
    values.insert(0);
    for (int w : values) {
      std::vector<int> parts = lambda.parts();
      if (w == 0) parts.push_back(r);
      else *std::find(parts.begin(), parts.end(), w) = w + r;
      std::sort(parts.rbegin(), parts.rend());
      Partition mu(parts);
      long mult = std::count(parts.begin(), parts.end(), w + r);
      out[mu] += coeff * mult;
    }
  }
  return out;
}

}  // namespace

std::map<Partition, BigInt> expand_power_sum(const Partition& rho) {
  std::map<Partition, BigInt> f{{Partition(), BigInt(1)}};
  for (int r : rho.parts()) f = times_power(f, r);
  return f;
}

namespace {

std::shared_ptr<const PowerMonomialTransition> build_transition(int N) {
  auto t = std::make_shared<PowerMonomialTransition>();
  t->N = N;
  t->partitions = partitions_of(N);
  const int P = static_cast<int>(t->partitions.size());
  for (int i = 0; i < P; ++i) t->index[t->partitions[i]] = i;
  t->p_to_m.assign(P, std::vector<ExactScalar>(P, 0));
  for (int i = 0; i < P; ++i)
    for (const auto& [lambda, c] : expand_power_sum(t->partitions[i])) t->p_to_m[i][t->index.at(lambda)] = ExactScalar(c);
  // p_rho only involves m_lambda with lambda dominating rho, which come earlier in
  // reverse-lex order, so m_to_p follows by forward substitution.
  t->m_to_p.assign(P, std::vector<ExactScalar>(P, 0));
  for (int i = 0; i < P; ++i) {
    std::vector<ExactScalar> row(P, 0);
    row[i] = 1;
    for (int j = 0; j < i; ++j) {
      const ExactScalar& c = t->p_to_m[i][j];
      if (is_zero(c)) continue;
      for (int k = 0; k <= j; ++k)
        if (!is_zero(t->m_to_p[j][k])) row[k] -= c * t->m_to_p[j][k];
    }
    const ExactScalar d = t->p_to_m[i][i];
    for (auto& v : row) v /= d;
    t->m_to_p[i] = std::move(row);
  }
  return t;
}

}  // namespace

std::shared_ptr<const PowerMonomialTransition> power_monomial_transition(int N) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const PowerMonomialTransition>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  auto t = build_transition(N);
  cache.emplace(N, t);
  return t;
}

SymFunc to_monomial(const SymFunc& f) {
  if (f.basis == Basis::monomial) return f;
  if (f.basis != Basis::power_sum) throw std::invalid_argument("to_monomial: convert Jack expansions through a JackTable");
  auto t = power_monomial_transition(f.degree);
  SymFunc g{Basis::monomial, 1, f.degree, {}};
  for (const auto& [rho, a] : f.coeffs) {
    const auto& row = t->p_to_m[t->index.at(rho)];
    for (std::size_t j = 0; j < row.size(); ++j)
      if (!is_zero(row[j])) g.coeffs[t->partitions[j]] += a * row[j];
  }
  g.prune();
  return g;
}

SymFunc to_power_sum(const SymFunc& f) {
  if (f.basis == Basis::power_sum) return f;
  if (f.basis != Basis::monomial) throw std::invalid_argument("to_power_sum: convert Jack expansions through a JackTable");
  auto t = power_monomial_transition(f.degree);
  SymFunc g{Basis::power_sum, 1, f.degree, {}};
  for (const auto& [lambda, a] : f.coeffs) {
    const auto& row = t->m_to_p[t->index.at(lambda)];
    for (std::size_t j = 0; j < row.size(); ++j)
      if (!is_zero(row[j])) g.coeffs[t->partitions[j]] += a * row[j];
  }
  g.prune();
  return g;
}

}  // namespace purif
