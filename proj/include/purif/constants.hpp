#pragma once

#include "purif/exact.hpp"

#include <optional>
#include <string>
#include <vector>

namespace purif {

inline constexpr double kEulerGamma = 0.57721566490153286061;
// E1 := e Gamma(0, 1), the Gompertz constant.
inline constexpr double kGompertz = 0.59634736232319407434;

// a + b gamma_E + c E1 with rational weights.
struct ConstantAlgebraElement {
  ExactScalar rational = 0;
  ExactScalar gammaE = 0;
  ExactScalar E1 = 0;

  ConstantAlgebraElement() = default;
  ConstantAlgebraElement(const ExactScalar& r) : rational(r) {}
  ConstantAlgebraElement(long r) : rational(r) {}
  static ConstantAlgebraElement make(const ExactScalar& r, const ExactScalar& g, const ExactScalar& e);
  static ConstantAlgebraElement euler_gamma() { return make(0, 1, 0); }
  static ConstantAlgebraElement gompertz() { return make(0, 0, 1); }

  bool is_rational() const { return purif::is_zero(gammaE) && purif::is_zero(E1); }
  bool is_zero() const { return is_rational() && purif::is_zero(rational); }
  double value() const;
  std::string to_string() const;

  bool operator==(const ConstantAlgebraElement& o) const {
    return rational == o.rational && gammaE == o.gammaE && E1 == o.E1;
  }
};

using CAE = ConstantAlgebraElement;

CAE operator+(const CAE& a, const CAE& b);
CAE operator-(const CAE& a, const CAE& b);
CAE operator-(const CAE& a);
// Throws std::domain_error when both factors carry transcendental parts.
CAE operator*(const CAE& a, const CAE& b);
// Division by a rational only.
CAE operator/(const CAE& a, const CAE& b);

// First-order jet a + b eps over the constant algebra. The derivative may be unknown;
// it stays harmless as long as it only ever meets a zero value.
struct Dual {
  CAE v;
  std::optional<CAE> d;

  Dual() : v(0), d(CAE(0)) {}
  Dual(const CAE& value) : v(value), d(CAE(0)) {}
  Dual(long value) : v(value), d(CAE(0)) {}
  Dual(const CAE& value, std::optional<CAE> derivative) : v(value), d(std::move(derivative)) {}
  static Dual variable(const ExactScalar& at) { return Dual(CAE(at), CAE(1)); }

  // Derivative, throwing if it was never determined.
  const CAE& derivative() const;
};

Dual operator+(const Dual& a, const Dual& b);
Dual operator-(const Dual& a, const Dual& b);
Dual operator-(const Dual& a);
Dual operator*(const Dual& a, const Dual& b);
// Requires a rational, nonzero divisor value.
Dual operator/(const Dual& a, const Dual& b);

// log_weight * ln x + const_log_weight * ln(const_log_arg) + sum_l terms[l] x^l.
struct ScalingSeries {
  CAE log_weight = 0;
  // Extra constant ln(c) for Renyi index n >= 3, where c = n^{n-2}/(n-1)! is not in the basis.
  ExactScalar const_log_weight = 0;
  ExactScalar const_log_arg = 1;
  std::vector<CAE> terms;

  int order() const { return static_cast<int>(terms.size()) - 1; }
  double evaluate(double x) const;
  // Same series without the ln x channel.
  double evaluate_regular(double x) const;
};

}  // namespace purif
