#include "purif/closed_forms.hpp"

#include "purif/symfunc.hpp"

namespace purif {

ExactScalar scaled_upper_gamma(int n) {
  if (n < 2) throw std::invalid_argument("scaled_upper_gamma: n >= 2 required (n = 1 gives the Gompertz constant)");
  ExactScalar s = 0;
  for (int j = 0; j <= n - 2; ++j) s += power(ExactScalar(n), j) / ExactScalar(factorial(j));
  return s * ExactScalar(factorial(n - 2));
}

ExactScalar c_constant_N(int N) { return scaled_upper_gamma(N) / power(ExactScalar(N), N - 1); }

ExactScalar m_closed(int N, int j) {
  if (N < 2) throw std::invalid_argument("m_closed: N >= 2 required");
  const ExactScalar n(N);
  return m_closed_form<ExactScalar>(n, power(n, N - 2), c_constant_N(N), j);
}

BigInt omega_closed(int N, int l) {
  ExactScalar v = omega_closed_form<ExactScalar>(ExactScalar(N), l);
  return v.get_num();
}

namespace {

// 1/Gamma(z) at integer z; zero at the poles.
ExactScalar inverse_gamma_int(long z) {
  if (z <= 0) return 0;
  return ExactScalar(1) / ExactScalar(factorial(static_cast<unsigned>(z - 1)));
}

std::vector<ExactScalar> times_factorial(std::vector<ExactScalar> v) {
  for (std::size_t l = 0; l < v.size(); ++l) v[l] *= ExactScalar(factorial(static_cast<unsigned>(l)));
  return v;
}

}  // namespace

ExpSum m_exp_sum(int N, int beta) {
  if (N < 1) throw std::invalid_argument("m_exp_sum: N >= 1 required");
  ExpSum s;
  if (beta == 2) {
    const ExactScalar nf(factorial(N));
    for (int i = 0; i <= N - 1; ++i) {
      ExactScalar w = ExactScalar(binomial(N - 1, i)) / nf;
      if (i % 2) w = -w;
      s.add(rational((N - 1 - 2 * i) * N, 2), w);
    }
    return s;
  }
  if (beta != 1) throw std::invalid_argument("m_exp_sum: beta must be 1 or 2");
  s.add(ExactScalar(N * (N - 1)), power(ExactScalar(2), N) * ExactScalar(factorial(N)) / ExactScalar(factorial(2 * N)));
  for (long m = 1; m <= N - 1; ++m)
    for (long k = 0; k <= m - 1; ++k) {
      ExactScalar tail = inverse_gamma_int(k - 2 * m + N + 1);
      if (is_zero(tail)) continue;
      ExactScalar w = power(ExactScalar(2), k + 1) * (2 * k + 1) * N * ExactScalar(factorial(m - 1));
      w /= ExactScalar((k - N) * (k - N + 1) * (k + N) * (k + N + 1));
      w *= inverse_gamma_int(2 * m) * inverse_gamma_int(m - k) * tail;
      if ((k + N) % 2) w = -w;
      const ExactScalar rate = rational(k * k - 2 * N * k + k + N * (4 * m - N - 3), 2);
      s.add(rate, -w);
    }
  return s;
}

std::vector<ExactScalar> m_series(int N, int order, int beta) { return m_exp_sum(N, beta).series(order); }

std::vector<ExactScalar> m_walk_counts(int N, int order, int beta) { return times_factorial(m_series(N, order, beta)); }

ExpSum omega_exp_sum(int N) {
  ExpSum s;
  const ExactScalar pre = power(ExactScalar(2), N) * ExactScalar(factorial(N));
  for (const auto& lambda : partitions_of(N)) s.add(nu(lambda, 1), pre / ExactScalar(lambda.doubled().hook_product()));
  return s;
}

std::vector<ExactScalar> omega_series(int N, int order) { return omega_exp_sum(N).series(order); }

std::vector<ExactScalar> omega_walk_counts(int N, int order) { return times_factorial(omega_series(N, order)); }

ExactScalar a_first_order_closed(int n, int k) {
  return ExactScalar(n + 1) * rational(k, 2) * (n - 1) / power(ExactScalar(n), n - 2) * scaled_upper_gamma(n);
}

ExactScalar a_second_order_closed(int N, int n, int k) {
  const ExactScalar nn(n);
  const long free = N - static_cast<long>(n) * k;
  ExactScalar v = ExactScalar(binomial(free, 2));
  v += rational(2 * n, n + 1) * nn * k * free;
  const ExactScalar merge = ExactScalar(2 * n) / power(ExactScalar(2), 2 * n - 1) * power(ExactScalar(2 * n), 2 * n - 2);
  const ExactScalar mq = m_closed(n, 1);
  v += (merge + mq * mq / (nn * nn)) / power(nn, 2 * (n - 2)) * ExactScalar(binomial(k, 2));
  v += m_closed(n, 2) / (nn * (n + 1) * power(nn, n - 2)) * k;
  return v * (n + 1) * (n + 1);
}

ExactScalar a_pair_closed(int N, int k, int l) {
  if (l == 1) return rational(3 * k, 2);
  if (l == 2)
    return rational(9 * k, 2) + rational(297, 4) * ExactScalar(binomial(k, 2)) + 24 * k * (N - 2 * k) +
           9 * ExactScalar(binomial(N - 2 * k, 2));
  throw std::out_of_range("a_pair_closed: l must be 1 or 2");
}

ExactScalar a_unitary_first_order(int N, int n, int k) {
  const ExactScalar Y = rational(n * (n - 1) * k, 2);
  return rational((N - 1) * N * (n + 1), 4) - rational((n + 1) * (5 * n + 6), 12) * Y + Y * Y + N * Y;
}

}  // namespace purif
