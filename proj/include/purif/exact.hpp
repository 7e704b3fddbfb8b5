#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace purif {

// Reduced big rational; gmp keeps gcd(num, den) = 1 and den > 0 after canonicalize().
using ExactScalar = mpq_class;
using BigInt = mpz_class;

ExactScalar rational(long num, long den = 1);
ExactScalar parse_rational(const std::string& text);
std::string to_string(const ExactScalar& value);
std::string to_string(const BigInt& value);
double to_double(const ExactScalar& value);

BigInt factorial(unsigned n);
BigInt binomial(long n, long k);
ExactScalar power(const ExactScalar& base, long exponent);

// Generalized binomial C(x, k) for rational x.
ExactScalar binomial(const ExactScalar& x, unsigned k);

// Rising factorial (a)_n = a (a+1) ... (a+n-1).
ExactScalar pochhammer(const ExactScalar& a, unsigned n);

bool is_zero(const ExactScalar& value);

}  // namespace purif
