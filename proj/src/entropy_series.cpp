#include "purif/entropy_series.hpp"

#include "purif/closed_forms.hpp"
#include "purif/interpolation.hpp"

#include <fmt/format.h>

#include <stdexcept>

namespace purif {

namespace {

CAE harmonic(int j) {
  ExactScalar h = 0;
  for (int i = 1; i <= j; ++i) h += rational(1, i);
  return h;
}

// -L'(1) with L(n) = ln(n^{n-2}/(n-1)!): the constant of every n -> 1 limit.
CAE vn_constant() { return CAE(1) - CAE::euler_gamma(); }

}  // namespace

ScalingSeries renyi_series(int n, ReplicaLimit limit, int beta, int order) {
  if (n < 2) throw std::invalid_argument("renyi_series: integer n >= 2 required (use vn_series for n = 1)");
  if (beta != 1 && beta != 2) throw std::invalid_argument("renyi_series: beta must be 1 or 2");
  if (order < 0) throw std::invalid_argument("renyi_series: order must be non-negative");
  if (order > max_reachable_order(n))
    throw std::out_of_range(fmt::format("renyi_series: order {} exceeds the computable bound {} for n = {}", order,
                                        max_reachable_order(n), n));
  const ExactScalar Nlim = limit == ReplicaLimit::BR ? 1 : 0;
  ScalingSeries s;
  s.log_weight = CAE(-1);
  if (n > 2) {
    s.const_log_weight = rational(1, 1 - n);
    s.const_log_arg = minimal_path_weight(n);
  }
  s.terms.assign(order + 1, CAE(0));
  for (int j = 1; j <= order; ++j) {
    auto interp = interpolate_normalized(n, j, beta);
    if (!interp.consistent())
      throw std::logic_error(fmt::format("renyi_series: order {} coefficient is not polynomial in (N, k)", j));
    if (!is_zero(interp.poly.evaluate(Nlim, 0)))
      throw std::logic_error("renyi_series: Omega_N does not reduce to 1 in the replica limit");
    s.terms[j] = CAE(interp.poly.dk_at_zero(Nlim) / (1 - n));
  }
  return s;
}

int vn_max_order(ReplicaLimit limit) { return limit == ReplicaLimit::BR ? 4 : 2; }

ScalingSeries vn_series(ReplicaLimit limit, int beta, int order) {
  if (beta != 1) throw std::invalid_argument("vn_series: only beta = 1 is wired");
  if (order < 0 || order > vn_max_order(limit))
    throw std::out_of_range(fmt::format("vn_series: closed forms reach order {} for {}", vn_max_order(limit),
                                        limit == ReplicaLimit::BR ? "BR" : "FM"));
  if (limit == ReplicaLimit::FM) return vn_series_from_bracket(0, order);

  // f_j(N) = m_N^{(N-1+j)} / Gamma(N+j) is the coefficient of x^{N-1+j} in M_N, and
  // S = -d/dN [M_N - Omega_N] at N = 1 because M_1 = Omega_1 = 1.
  const Dual N = Dual::variable(1);
  const Dual nn2(CAE(1), CAE(-1));
  const Dual c1(CAE::gompertz(), std::nullopt);
  ScalingSeries s;
  s.log_weight = CAE(-1);
  s.terms.assign(order + 1, CAE(0));
  for (int j = 0; j <= order; ++j) {
    const ExactScalar jf(factorial(j));
    const Dual gamma_nj(CAE(jf), (harmonic(j) - CAE::euler_gamma()) * CAE(jf));
    const Dual f = m_closed_form<Dual>(N, nn2, c1, j) / gamma_nj;
    const Dual w = omega_closed_form<Dual>(N, j) / Dual(CAE(jf));
    if (!f.v.is_zero() && j > 0) throw std::logic_error("vn_series: M_1 has a nonzero x^j coefficient");
    s.terms[j] = w.derivative() - f.derivative();
  }
  return s;
}

ScalingSeries vn_series_from_bracket(const ExactScalar& Nrep, int order) {
  if (order < 0 || order > 2) throw std::out_of_range("vn_series_from_bracket: order <= 2");
  const Dual n = Dual::variable(1);
  const Dual N{CAE(Nrep)};
  const Dual ct(CAE::gompertz(), std::nullopt);
  // d/dn of n^{n-2}, n^{n-1}, n^{4-2n} at n = 1.
  const Dual p2(CAE(1), CAE(-1));
  const Dual p1(CAE(1), CAE(0));
  const Dual p4(CAE(1), CAE(2));
  auto d = renyi_bracket<Dual>(n, N, ct, p2, p1, p4);
  ScalingSeries s;
  s.log_weight = CAE(-1);
  s.terms.assign(order + 1, CAE(0));
  s.terms[0] = vn_constant();
  if (order >= 1) s.terms[1] = -d[0].derivative();
  if (order >= 2) s.terms[2] = -d[1].derivative();
  return s;
}

ScalingSeries renyi_series_from_bracket(int n, const ExactScalar& Nrep) {
  if (n < 2) throw std::invalid_argument("renyi_series_from_bracket: n >= 2 required");
  const ExactScalar nn(n);
  auto d = renyi_bracket<ExactScalar>(nn, Nrep, scaled_upper_gamma(n), power(nn, n - 2), power(nn, n - 1),
                                      power(nn, 4 - 2 * n));
  ScalingSeries s;
  s.log_weight = CAE(-1);
  if (n > 2) {
    s.const_log_weight = rational(1, 1 - n);
    s.const_log_arg = minimal_path_weight(n);
  }
  s.terms = {CAE(0), CAE(d[0] / (1 - n)), CAE(d[1] / (1 - n))};
  return s;
}

}  // namespace purif
