#include "purif/exact.hpp"

#include <stdexcept>

namespace purif {

ExactScalar rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational: zero denominator");
  ExactScalar r(num, den);
  r.canonicalize();
  return r;
}

ExactScalar parse_rational(const std::string& text) {
  ExactScalar r;
  if (r.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: " + text);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  r.canonicalize();
  return r;
}

std::string to_string(const ExactScalar& value) { return value.get_str(10); }
std::string to_string(const BigInt& value) { return value.get_str(10); }
double to_double(const ExactScalar& value) { return value.get_d(); }

BigInt factorial(unsigned n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

ExactScalar power(const ExactScalar& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("power: zero to negative exponent");
    ExactScalar inv = 1 / base;
    return power(inv, -exponent);
  }
  ExactScalar r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return r;
}

ExactScalar binomial(const ExactScalar& x, unsigned k) {
  ExactScalar r = 1;
  for (unsigned i = 0; i < k; ++i) r *= (x - i) / ExactScalar(i + 1);
  return r;
}

ExactScalar pochhammer(const ExactScalar& a, unsigned n) {
  ExactScalar r = 1;
  for (unsigned i = 0; i < n; ++i) r *= a + i;
  return r;
}

bool is_zero(const ExactScalar& value) { return sgn(value) == 0; }

}  // namespace purif
