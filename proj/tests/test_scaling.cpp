#include "purif/closed_forms.hpp"
#include "purif/graph_oracle.hpp"
#include "purif/interpolation.hpp"
#include "purif/scaling.hpp"

#include <doctest.h>

#include <cmath>

using namespace purif;

namespace {

// Taylor coefficients of 2^{N-1}/N! sinh(N x / 2)^{N-1} from the binomial expansion of the power.
std::vector<ExactScalar> sinh_power_series(int N, int order) {
  const int m = N - 1;
  ExpSum s;
  // sinh(y)^m = 2^{-m} sum_k C(m, k) (-1)^k e^{(m - 2k) y}, y = N x / 2
  for (int k = 0; k <= m; ++k) {
    ExactScalar w = ExactScalar(binomial(m, k)) * (k % 2 ? -1 : 1);
    w *= power(ExactScalar(2), N - 1) / ExactScalar(factorial(N)) / power(ExactScalar(2), m);
    s.add(ExactScalar(N) * (m - 2 * k) / 2, w);
  }
  return s.series(order);
}

}  // namespace

TEST_CASE("nu") {
  CHECK(nu(Partition{2}, 2) == 1);
  CHECK(nu(Partition{1, 1}, 2) == -1);
  CHECK(nu(Partition{2}, 1) == 2);
  CHECK(nu(Partition{1, 1}, 1) == -1);
  for (const auto& b : {rational(1), rational(2), rational(4), rational(2, 3)}) CHECK(nu(Partition{1}, b) == 0);
  // beta = 2 gives the content sum.
  for (const auto& l : partitions_of(6)) {
    long content = 0;
    for (int i = 0; i < l.length(); ++i)
      for (int j = 0; j < l[i]; ++j) content += j - i;
    CHECK(nu(l, 2) == content);
  }
}

TEST_CASE("moment scaling") {
  for (int beta : {1, 2}) {
    const auto s = moment_scaling(Partition{1}, beta, 5);
    CHECK(s.terms[0] == CAE(1));
    for (int l = 1; l <= 5; ++l) CHECK(s.terms[l].is_zero());
  }
  const auto s2 = moment_scaling(Partition{2}, 1, 3);
  CHECK(s2.terms[1] == CAE(1));
  CHECK(s2.terms[2] == CAE(rational(1, 2)));
  for (int N = 2; N <= 6; ++N) {
    const auto sp = moment_scaling(Partition{N}, 2, 10);
    const auto closed = sinh_power_series(N, 10);
    const auto ms = m_series(N, 10, 2);
    for (int l = 0; l <= 10; ++l) {
      CHECK(sp.terms[l] == CAE(closed[l]));
      CHECK(ms[l] == closed[l]);
    }
  }
}

TEST_CASE("finite-q moments") {
  for (long q : {2L, 7L, 64L}) {
    const auto one = moment_finite_q(Partition{1}, 1, q);
    for (double x : {0.0, 0.3, 2.0}) CHECK(one.evaluate(x) == doctest::Approx(1).epsilon(1e-14));
    CHECK(moment_finite_q(Partition{2}, 1, q).evaluate(0) == doctest::Approx(1.0 / q).epsilon(1e-13));
    CHECK(moment_finite_q(Partition{2}, 2, q).evaluate(0) == doctest::Approx(1.0 / q).epsilon(1e-13));
  }
  CHECK(moment_finite_q(Partition{1, 1}, 1, 2).evaluate(0) == doctest::Approx(1).epsilon(1e-14));
  // At fixed x the walk term dominates; the identity-walk term is suppressed by 1/q.
  for (int beta : {1, 2}) {
    const long q = 1000000;
    const double lim = spectral_moment(Partition{2}, beta).evaluate(0.1);
    CHECK(std::abs(moment_finite_q(Partition{2}, beta, q).evaluate(0.1) - lim) < 1e-5);
  }
  CHECK_THROWS(moment_finite_q(Partition{3}, 1, 2));
}

TEST_CASE("closed-form constants") {
  CHECK(scaled_upper_gamma(2) == 1);
  CHECK(scaled_upper_gamma(3) == 4);
  CHECK(c_constant_N(2) == rational(1, 2));
  CHECK(minimal_path_weight(4) == rational(16, 6));
}

TEST_CASE("omega series") {
  const auto w2 = omega_series(2, 6);
  ExpSum ref;
  ref.add(2, rational(1, 3));
  ref.add(-1, rational(2, 3));
  CHECK(w2 == ref.series(6));
  for (int N = 2; N <= 6; ++N) {
    const auto counts = omega_walk_counts(N, 4);
    for (int l = 0; l <= 4; ++l) {
      CHECK(counts[l] == ExactScalar(omega_closed(N, l)));
      CHECK(counts[l] == ExactScalar(omega_coefficient_oracle(N, l)));
    }
  }
}

TEST_CASE("m coefficients") {
  CHECK(m_closed(4, 0) == 16);
  CHECK(m_closed(3, 1) == 12);
  for (int N = 2; N <= 6; ++N) {
    const auto counts = m_walk_counts(N, N + 3, 1);
    for (int j = 0; j <= 4; ++j) {
      CAPTURE(N); CAPTURE(j);
      CHECK(counts[N - 1 + j] == m_closed(N, j));
      CHECK(m_closed(N, j) == ExactScalar(m_coefficient_oracle(1, N, N - 1 + j)));
    }
    for (int l = 0; l < N - 1; ++l) CHECK(is_zero(counts[l]));
  }
}

TEST_CASE("a coefficients") {
  for (int N = 2; N <= 10; ++N)
    for (int k = 0; 2 * k <= N; ++k) {
      CAPTURE(N); CAPTURE(k);
      CHECK(a_coefficient(N, 2, k, 1, 1) == ExactScalar(3 * k) / 2);
      CHECK(a_pair_closed(N, k, 1) == ExactScalar(3 * k) / 2);
      const ExactScalar expected = ExactScalar(9 * k) / 2 + rational(297, 4) * ExactScalar(binomial(k, 2)) +
                                   24 * k * (N - 2 * k) + 9 * ExactScalar(binomial(N - 2 * k, 2));
      CHECK(a_coefficient(N, 2, k, 2, 1) == expected);
      CHECK(a_pair_closed(N, k, 2) == expected);
      const ExactScalar Y = k;
      CHECK(a_coefficient(N, 2, k, 1, 2) ==
            ExactScalar((N - 1) * N * 3) / 4 - Y * 3 * 16 / 12 + Y * Y + N * Y);
      CHECK(a_unitary_first_order(N, 2, k) == a_coefficient(N, 2, k, 1, 2));
    }
  for (int n = 2; n <= 5; ++n)
    for (int N = n; N <= 3 * n && N <= 12; ++N)
      for (int k = 0; n * k <= N; ++k) {
        CAPTURE(n); CAPTURE(N); CAPTURE(k);
        CHECK(a_coefficient(N, n, k, 1, 1) == a_first_order_closed(n, k));
        if (n <= 4) CHECK(a_coefficient(N, n, k, 2, 1) == a_second_order_closed(N, n, k));
        CHECK(a_coefficient(N, n, k, 0, 1) == 1);
      }
}

TEST_CASE("polynomial interpolation of a") {
  const auto first = interpolate_c(2, 1, 1);
  CHECK(first.consistent());
  for (int N = 0; N <= 12; ++N)
    for (int k = 0; k <= 6; ++k) CHECK(first.poly.evaluate(N, k) == ExactScalar(3 * k) / 2);
  const auto second = interpolate_c(2, 2, 1, 14);
  CHECK(second.consistent());
  CHECK(second.check_points >= 20);
  for (int N = 4; N <= 14; ++N)
    for (int k = 0; 2 * k <= N; ++k) CHECK(second.poly.evaluate(N, k) == a_pair_closed(N, k, 2));
  for (int n = 2; n <= 4; ++n) {
    const auto zero = interpolate_c(n, 0, 1);
    CHECK(zero.poly.evaluate(7, 2) == 1);
  }
  CHECK(max_reachable_order(2) >= 6);
}
