#pragma once

#include "purif/constants.hpp"
#include "purif/partition.hpp"

#include <map>
#include <vector>

namespace purif {

// nu_beta(lambda) = sum_j (lambda_j^2 / beta - lambda'_j^2 / 2) + (1/2 - 1/beta) N.
ExactScalar nu(const Partition& lambda, const ExactScalar& beta);

// Finite sum of weighted exponentials, sum_i w_i exp(r_i x).
struct ExpSum {
  std::map<ExactScalar, ExactScalar> terms;  // rate -> weight

  void add(const ExactScalar& rate, const ExactScalar& weight);
  // Taylor coefficients of x^m for m = 0..order.
  std::vector<ExactScalar> series(int order) const;
  double evaluate(double x) const;
};

ExpSum spectral_moment(const Partition& mu, const ExactScalar& beta);

// sum_lambda gamma^lambda_mu(2/beta) e^{x nu_beta(lambda)} to order x^order.
ScalingSeries moment_scaling(const Partition& mu, const ExactScalar& beta, int x_order);

// <p_mu> at finite q as a function of x = 4 Gamma t / q; weights include J_lambda(1/q).
ExpSum moment_finite_q(const Partition& mu, const ExactScalar& beta, long q);

// Per (beta, N, n): b[k][j] = coefficient of x^{(n-1)k + j} in [e^{xA}]_{n^k 1^{N-nk}, 1},
// divided by (n^{n-2}/(n-1)!)^k, for k = 0..N/n and j = 0..max_j.
std::vector<std::vector<ExactScalar>> normalized_moment_data(int beta, int N, int n, int max_j);

// a_{N,n,k,l}: b_l (n+1)^l for beta = 1 and b_{2l} (n+1)^l for beta = 2.
ExactScalar a_coefficient(int N, int n, int k, int l, int beta);

// n^{n-2}/(n-1)!
ExactScalar minimal_path_weight(int n);

// Largest N for which Jack or character tables are built on demand.
inline constexpr int kMaxReplicaN = 20;

}  // namespace purif
