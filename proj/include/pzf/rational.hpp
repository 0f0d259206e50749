// Exact rational arithmetic used throughout the exact solvers.
// Thin aliases over GMP plus the formatting helpers the CLI needs.
#pragma once

#include <gmpxx.h>

#include <string>

namespace pzf {

using Rational = mpq_class;
using BigInt = mpz_class;

Rational make_rational(long num, long den);

// 2^k for k >= 0.
Rational pow2_rational(unsigned k);

// "p/q" in lowest terms; plain "p" when the denominator is 1.
std::string fraction_string(const Rational& q);

// Decimal rendering with the given number of significant digits.
std::string decimal_string(const Rational& q, int sig_digits = 15);

// Inverse of fraction_string. Accepts "p", "p/q", optional sign.
Rational parse_fraction(const std::string& text);

double to_double(const Rational& q);

}  // namespace pzf
