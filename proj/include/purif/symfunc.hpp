#pragma once

#include "purif/exact.hpp"
#include "purif/partition.hpp"

#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

namespace purif {

enum class Basis { power_sum, monomial, jack };

struct SymFunc {
  Basis basis = Basis::power_sum;
  ExactScalar alpha = 1;  // only meaningful for Basis::jack
  int degree = 0;
  std::map<Partition, ExactScalar> coeffs;

  ExactScalar coeff(const Partition& lambda) const;
  void add(const Partition& lambda, const ExactScalar& value);
  // Drops zero entries.
  void prune();
};

SymFunc power_sum(const Partition& mu);
SymFunc monomial(const Partition& lambda);

// <p_lambda, p_mu> = delta z_lambda alpha^{l(lambda)}, extended bilinearly.
ExactScalar inner_product_p(const SymFunc& f, const SymFunc& g, const ExactScalar& alpha);

// c(lambda, alpha, t) = prod over boxes (alpha (lambda_i - j) + (lambda'_j - i) + t).
ExactScalar c_constant(const Partition& lambda, const ExactScalar& alpha, const ExactScalar& t);

// Change of basis between power sums and monomials at fixed degree.
// p_rho = sum_lambda to_monomial[rho][lambda] m_lambda, with partitions indexed in
// the order of partitions_of(N).
struct PowerMonomialTransition {
  int N = 0;
  std::vector<Partition> partitions;
  std::unordered_map<Partition, int, PartitionHash> index;
  std::vector<std::vector<ExactScalar>> p_to_m;
  // m_lambda = sum_rho m_to_p[lambda][rho] p_rho.
  std::vector<std::vector<ExactScalar>> m_to_p;
};

// Cached per degree; thread-safe.
std::shared_ptr<const PowerMonomialTransition> power_monomial_transition(int N);

// Expansion of p_rho in monomials via repeated m_lambda * p_r.
std::map<Partition, BigInt> expand_power_sum(const Partition& rho);

SymFunc to_monomial(const SymFunc& f);
SymFunc to_power_sum(const SymFunc& f);

}  // namespace purif
