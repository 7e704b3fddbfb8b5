#include "purif/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace purif {

CAE CAE::make(const ExactScalar& r, const ExactScalar& g, const ExactScalar& e) {
  CAE c;
  c.rational = r;
  c.gammaE = g;
  c.E1 = e;
  return c;
}

double CAE::value() const { return to_double(rational) + to_double(gammaE) * kEulerGamma + to_double(E1) * kGompertz; }

std::string CAE::to_string() const {
  std::string s;
  auto term = [&](const ExactScalar& c, const char* name) {
    if (purif::is_zero(c)) return;
    if (!s.empty()) s += sgn(c) < 0 ? " - " : " + ";
    else if (sgn(c) < 0) s += "-";
    const ExactScalar a = abs(c);
    if (!*name) s += purif::to_string(a);
    else s += (a == 1 ? std::string() : purif::to_string(a) + "*") + name;
  };
  term(rational, "");
  term(gammaE, "gammaE");
  term(E1, "E1");
  return s.empty() ? "0" : s;
}

CAE operator+(const CAE& a, const CAE& b) { return CAE::make(a.rational + b.rational, a.gammaE + b.gammaE, a.E1 + b.E1); }
CAE operator-(const CAE& a, const CAE& b) { return CAE::make(a.rational - b.rational, a.gammaE - b.gammaE, a.E1 - b.E1); }
CAE operator-(const CAE& a) { return CAE::make(-a.rational, -a.gammaE, -a.E1); }

CAE operator*(const CAE& a, const CAE& b) {
  if (a.is_rational()) return CAE::make(a.rational * b.rational, a.rational * b.gammaE, a.rational * b.E1);
  if (b.is_rational()) return b * a;
  throw std::domain_error("constant algebra: product of two transcendental constants");
}

CAE operator/(const CAE& a, const CAE& b) {
  if (!b.is_rational() || is_zero(b.rational)) throw std::domain_error("constant algebra: division by a non-rational or zero");
  return CAE::make(a.rational / b.rational, a.gammaE / b.rational, a.E1 / b.rational);
}

const CAE& Dual::derivative() const {
  if (!d) throw std::domain_error("dual: derivative depends on an unknown quantity");
  return *d;
}

namespace {

// x * y where y may be unknown; a zero x annihilates it.
std::optional<CAE> scaled(const CAE& x, const std::optional<CAE>& y) {
  if (x.is_zero()) return CAE(0);
  if (!y) return std::nullopt;
  return x * *y;
}

std::optional<CAE> add(const std::optional<CAE>& a, const std::optional<CAE>& b) {
  if (!a || !b) return std::nullopt;
  return *a + *b;
}

}  // namespace

Dual operator+(const Dual& a, const Dual& b) { return Dual(a.v + b.v, add(a.d, b.d)); }
Dual operator-(const Dual& a, const Dual& b) { return Dual(a.v - b.v, add(a.d, b.d ? std::optional<CAE>(-*b.d) : std::nullopt)); }
Dual operator-(const Dual& a) { return Dual(-a.v, a.d ? std::optional<CAE>(-*a.d) : std::nullopt); }

Dual operator*(const Dual& a, const Dual& b) { return Dual(a.v * b.v, add(scaled(a.v, b.d), scaled(b.v, a.d))); }

Dual operator/(const Dual& a, const Dual& b) {
  if (!b.v.is_rational() || is_zero(b.v.rational)) throw std::domain_error("dual: divisor value must be a nonzero rational");
  const CAE inv = CAE(1) / b.v;
  // (a/b)' = a'/b - a b'/b^2
  std::optional<CAE> t1 = scaled(inv, a.d);
  std::optional<CAE> t2 = scaled(a.v * inv * inv, b.d);
  return Dual(a.v * inv, add(t1, t2 ? std::optional<CAE>(-*t2) : std::nullopt));
}

double ScalingSeries::evaluate_regular(double x) const {
  double s = 0;
  double xp = 1;
  for (const auto& t : terms) {
    s += t.value() * xp;
    xp *= x;
  }
  if (!is_zero(const_log_weight)) s += to_double(const_log_weight) * std::log(to_double(const_log_arg));
  return s;
}

double ScalingSeries::evaluate(double x) const {
  if (x <= 0) throw std::domain_error("ScalingSeries::evaluate requires x > 0");
  return log_weight.value() * std::log(x) + evaluate_regular(x);
}

}  // namespace purif
