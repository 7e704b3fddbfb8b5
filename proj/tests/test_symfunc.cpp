#include "purif/characters.hpp"
#include "purif/jack.hpp"
#include "purif/symfunc.hpp"

#include <doctest.h>

using namespace purif;

TEST_CASE("power-sum inner product") {
  CHECK(inner_product_p(power_sum(Partition{2}), power_sum(Partition{2}), 1) == 2);
  CHECK(inner_product_p(power_sum(Partition{1, 1}), power_sum(Partition{2}), rational(7, 3)) == 0);
  CHECK(inner_product_p(power_sum(Partition{1, 1}), power_sum(Partition{1, 1}), 2) == 8);
}

TEST_CASE("c constant") {
  CHECK(c_constant(Partition{1}, rational(5, 2), rational(3, 7)) == rational(3, 7));
  CHECK(c_constant(Partition{2}, 1, 1) == 2);
  CHECK(c_constant(Partition{2, 2}, 1, 1) == 12);
  for (int N = 1; N <= 7; ++N)
    for (const auto& l : partitions_of(N)) CHECK(c_constant(l, 1, 1) == ExactScalar(l.hook_product()));
}

TEST_CASE("basis round trip") {
  for (int N = 1; N <= 6; ++N)
    for (const auto& l : partitions_of(N)) {
      auto p = power_sum(l);
      auto back = to_power_sum(to_monomial(p));
      back.prune();
      CHECK(back.coeffs == p.coeffs);
      auto m = monomial(l);
      auto mback = to_monomial(to_power_sum(m));
      mback.prune();
      CHECK(mback.coeffs == m.coeffs);
      for (const auto& [mu, c] : to_monomial(p).coeffs) CHECK(mu.weight() == N);
    }
  // p_1^2 = m_2 + 2 m_11
  const auto e = expand_power_sum(Partition{1, 1});
  CHECK(e.at(Partition{2}) == 1);
  CHECK(e.at(Partition{1, 1}) == 2);
}

TEST_CASE("small Jack tables") {
  for (const auto& a : {rational(1), rational(2), rational(1, 2)}) {
    auto t = jack_table(1, a);
    CHECK(t->theta_at(Partition{1}, Partition{1}) == 1);
  }
  auto t1 = jack_table(2, 1);
  CHECK(t1->theta_at(Partition{2}, Partition{1, 1}) == 1);
  CHECK(t1->theta_at(Partition{2}, Partition{2}) == 1);
  auto t2 = jack_table(2, 2);
  CHECK(t2->theta_at(Partition{2}, Partition{1, 1}) == 1);
  CHECK(t2->theta_at(Partition{2}, Partition{2}) == 2);
}

TEST_CASE("Jack table properties") {
  for (const auto& alpha : {rational(1), rational(2), rational(1, 2)}) {
    for (int N = 1; N <= 6; ++N) {
      CAPTURE(N);
      auto t = jack_table(N, alpha);
      const auto& P = t->partitions;
      const Partition ones(std::vector<int>(N, 1));
      for (std::size_t l = 0; l < P.size(); ++l) {
        CHECK(t->theta_at(P[l], ones) == 1);
        CHECK(t->theta_at(P[l], Partition{N}) == theta_single_row(P[l], alpha));
        CHECK(t->norms[l] == c_constant(P[l], alpha, 1) * c_constant(P[l], alpha, alpha));
        for (std::size_t m = 0; m < P.size(); ++m) {
          const ExactScalar ip = inner_product_p(t->jack_power_sum(P[l]), t->jack_power_sum(P[m]), alpha);
          CHECK(ip == (l == m ? t->norms[l] : ExactScalar(0)));
          // gamma^l_m = theta^l_m z_m alpha^{l(m)} / <J_l, J_l>
          CHECK(t->gamma[l][m] == t->theta[l][m] * ExactScalar(P[m].z()) * power(alpha, P[m].length()) / t->norms[l]);
        }
      }
      // gamma inverts theta.
      for (std::size_t a = 0; a < P.size(); ++a)
        for (std::size_t b = 0; b < P.size(); ++b) {
          ExactScalar s = 0;
          for (std::size_t l = 0; l < P.size(); ++l) s += t->gamma[l][a] * t->theta[l][b];
          CHECK(s == (a == b ? 1 : 0));
        }
    }
  }
}

TEST_CASE("Schur specialization at alpha = 1") {
  for (int N = 1; N <= 6; ++N) {
    auto t = jack_table(N, 1);
    for (const auto& l : t->partitions)
      for (const auto& mu : t->partitions)
        CHECK(t->theta_at(l, mu) ==
              ExactScalar(l.hook_product()) * ExactScalar(character(l, mu)) / ExactScalar(mu.z()));
  }
}

TEST_CASE("Jack monomial expansion is triangular") {
  for (const auto& alpha : {rational(2), rational(1, 2)}) {
    auto t = jack_table(5, alpha);
    for (const auto& l : t->partitions) {
      const auto m = t->jack_monomial(l);
      CHECK(m.coeff(l) == c_constant(l, alpha, 1));
      for (const auto& [mu, c] : m.coeffs)
        if (!is_zero(c)) CHECK(l.dominates(mu));
    }
  }
}

TEST_CASE("single-row theta") {
  for (int N = 1; N <= 6; ++N)
    CHECK(theta_single_row(Partition{N}, rational(3, 2)) == power(rational(3, 2), N - 1) * ExactScalar(factorial(N - 1)));
  CHECK(theta_single_row(Partition{2, 2, 2}, 2) == 0);
  CHECK(theta_single_row(Partition{3, 2, 2, 1}, 2) == 0);
  CHECK(theta_single_row(Partition{2, 1}, 1) == jack_table(3, 1)->theta_at(Partition{2, 1}, Partition{3}));
}

TEST_CASE("zonal spherical functions") {
  for (int N = 1; N <= 6; ++N) {
    const Partition ones(std::vector<int>(N, 1));
    for (const auto& mu : partitions_of(N)) CHECK(zonal_spherical(Partition{N}, mu) == 1);
    for (const auto& l : partitions_of(N)) CHECK(zonal_spherical(l, ones) == 1);
  }
  // Trace of a fixed coset over both irreps of P_2 vanishes away from the identity coset.
  ExactScalar s = 0;
  for (const auto& l : partitions_of(2)) {
    const BigInt d = irrep_dimension(l.doubled());
    s += ExactScalar(d) * zonal_spherical(l, Partition{2});
  }
  CHECK(s == 0);
}

TEST_CASE("Jack table JSON round trip") {
  auto t = jack_table(4, rational(1, 2));
  const auto back = jack_table_from_json(jack_table_to_json(*t));
  CHECK(back.N == 4);
  CHECK(back.alpha == rational(1, 2));
  CHECK(back.partitions == t->partitions);
  CHECK(back.theta == t->theta);
  CHECK(back.gamma == t->gamma);
}
