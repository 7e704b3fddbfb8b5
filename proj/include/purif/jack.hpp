#pragma once

#include "purif/symfunc.hpp"

#include <memory>
#include <string>
#include <vector>

namespace purif {

// Jack polynomials of degree N in J-normalization (coefficient of m_lambda is c(lambda, alpha, 1)).
struct JackTable {
  int N = 0;
  ExactScalar alpha;
  std::vector<Partition> partitions;  // reverse-lex order, shared by rows and columns
  std::unordered_map<Partition, int, PartitionHash> index;
  // theta[l][m]: coefficient of p_{partitions[m]} in J_{partitions[l]}.
  std::vector<std::vector<ExactScalar>> theta;
  // gamma[l][m]: coefficient of J_{partitions[l]} in p_{partitions[m]}.
  std::vector<std::vector<ExactScalar>> gamma;
  // <J_l, J_l> = c(l, alpha, 1) c(l, alpha, alpha).
  std::vector<ExactScalar> norms;

  int idx(const Partition& lambda) const;
  const ExactScalar& theta_at(const Partition& lambda, const Partition& mu) const;
  const ExactScalar& gamma_at(const Partition& lambda, const Partition& mu) const;

  SymFunc jack_power_sum(const Partition& lambda) const;
  SymFunc jack_monomial(const Partition& lambda) const;
  // J_lambda at q coinciding points 1/q, through p_mu -> q^{l(mu) - N}.
  ExactScalar evaluate_at_inverse_q(const Partition& lambda, long q) const;
};

struct JackBuildOptions {
  // Recheck orthogonality of every pair and triangularity in the monomial basis.
  bool full_verification = false;
};

JackTable build_jack_table(int N, const ExactScalar& alpha, const JackBuildOptions& options = {});

// Memoized; also persisted as JSON under $PURIF_CACHE_DIR when that variable is set.
std::shared_ptr<const JackTable> jack_table(int N, const ExactScalar& alpha);

std::string jack_table_to_json(const JackTable& table);
JackTable jack_table_from_json(const std::string& text);

// Closed form for the coefficient of p_(N) in J_lambda.
ExactScalar theta_single_row(const Partition& lambda, const ExactScalar& alpha);

// omega^{2 lambda}(mu) = gamma^lambda_mu(2) |P_N| / d^{2 lambda}.
ExactScalar zonal_spherical(const Partition& lambda, const Partition& mu);

// Expands f (any basis) into power sums, using the table for Jack expansions.
SymFunc jack_to_power_sum(const SymFunc& f, const JackTable& table);

}  // namespace purif
