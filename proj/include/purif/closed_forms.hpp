#pragma once

#include "purif/constants.hpp"
#include "purif/scaling.hpp"

#include <array>
#include <stdexcept>

namespace purif {

// e^n Gamma(n-1, n) = (n-2)! sum_{j <= n-2} n^j / j!, for integer n >= 2.
ExactScalar scaled_upper_gamma(int n);
// C_N = e^N Gamma(N-1, N) / N^{N-1}.
ExactScalar c_constant_N(int N);

// m_N^{(N-1+j)} for j = 0..4, written in terms of N, nn2 = N^{N-2} and c = C_N.
// Generic in the scalar so the same expression serves exact integers and jets at N = 1.
template <class T>
T m_closed_form(const T& N, const T& nn2, const T& c, int j) {
  const T one(1);
  switch (j) {
    case 0:
      return nn2;
    case 1:
      return nn2 * N * N * (N - one) / T(2) * c;
    case 2:
      return nn2 * N * N * N * (N * N - one) / T(3) * (T(7) / T(8) - c);
    case 3:
      return nn2 * (N + T(2)) * N * N * N * (N * N - one) / T(720) *
             ((T(60) * N * N + T(40) * N + T(3)) * c - T(60) * N - T(4));
    case 4: {
      const T poly = T(120) + T(7) * N * (T(200) + T(9) * N * (T(185) * N - T(67)));
      const T cpoly = T(32) * (T(3) + T(2) * N * (T(16) + T(21) * N * (T(15) * N - T(4))));
      return nn2 * (N + T(3)) * (N + T(2)) * N * N * N * (N * N - one) / T(362880) * (poly - cpoly * c);
    }
    default:
      throw std::out_of_range("m_closed_form: closed forms exist for l = N-1 .. N+3 only");
  }
}

// omega_N^{(l)} for l = 0..4.
template <class T>
T omega_closed_form(const T& N, int l) {
  switch (l) {
    case 0:
      return T(1);
    case 1:
      return T(0);
    case 2:
    case 3:
      return N * (N - T(1));
    case 4:
      return N * (N - T(1)) * (T(3) * N * N + N - T(11));
    default:
      throw std::out_of_range("omega_closed_form: closed forms exist for l <= 4 only");
  }
}

// Order-x and order-x^2 parts {D1, D2} of the generic-n Renyi bracket, so that
// S_n = [ln(n^{n-2}/(n-1)!) + (n-1) ln x + D1 x + D2 x^2] / (1 - n) + O(x^3) in the replica limits.
// ct = e^n Gamma(n-1, n); the powers of n are passed in so jets can carry their derivatives.
template <class T>
std::array<T, 2> renyi_bracket(const T& n, const T& N, const T& ct, const T& n_pow_nm2, const T& n_pow_nm1,
                               const T& n_pow_4m2n) {
  const T one(1);
  const T d1 = (n - one) * ct / (T(2) * n_pow_nm2);
  const T sq = (n - one) * (n - one) * ct * ct * n_pow_4m2n / T(4);
  const T d2 = -(n * (T(2) * N - one)) / T(2) + T(2) * n * n * N / (n + one) - (n * n * n + sq) / T(2) +
               n * n * (n - one) / T(3) * (T(7) / T(8) - ct / n_pow_nm1);
  return {d1, d2};
}

// m-coefficients (walk counts) from the closed forms, exact for integer N >= 2.
ExactScalar m_closed(int N, int j);
BigInt omega_closed(int N, int l);

// M_N as exponential sum: the two-row double sum for beta = 1, the sinh power for beta = 2.
ExpSum m_exp_sum(int N, int beta);
// Series coefficients of M_N (x^l / l! already divided out) up to order.
std::vector<ExactScalar> m_series(int N, int order, int beta);
// l! times the above: walk counts [A^l]_{N-cycle, 1}.
std::vector<ExactScalar> m_walk_counts(int N, int order, int beta);

// Omega_N = 2^N N! sum_lambda e^{nu_1(lambda) x} / c(2 lambda, 1, 1).
ExpSum omega_exp_sum(int N);
std::vector<ExactScalar> omega_series(int N, int order);
std::vector<ExactScalar> omega_walk_counts(int N, int order);

// a_{N,n,k,1} = (n+1) (k/2) (n-1)/n^{n-2} e^n Gamma(n-1, n).
ExactScalar a_first_order_closed(int n, int k);
// a_{N,n,k,2} assembled from m_n^{(n)}, m_{2n}^{(2n-1)}, m_n^{(n+1)}.
ExactScalar a_second_order_closed(int N, int n, int k);
// a_{N,2,k,1} = 3k/2 and a_{N,2,k,2} = 9k/2 + 297/4 C(k,2) + 24k(N-2k) + 9 C(N-2k, 2).
ExactScalar a_pair_closed(int N, int k, int l);
// beta = 2 first correction: (N-1)N(n+1)/4 - (n+1)(5n+6)Y/12 + Y^2 + N Y, Y = n(n-1)k/2.
ExactScalar a_unitary_first_order(int N, int n, int k);

}  // namespace purif
