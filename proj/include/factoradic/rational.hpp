#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace factoradic {

// Every exact value in the library is one of these. Rationals are kept in
// canonical (reduced, positive denominator) form.
using BigInt = mpz_class;
using Rational = mpq_class;

Rational ratio(long numerator, long denominator);

BigInt factorial(unsigned long n);

// 1 / n!
Rational inverse_factorial(unsigned long n);

// "p/q", always with an explicit denominator ("0/1", "-119/240").
std::string format_rational(const Rational& x);

// Accepts "p/q" or a bare integer "p". Throws Error(kParse) otherwise.
Rational parse_rational(std::string_view text);

// floor(x) as a big integer.
BigInt floor_of(const Rational& x);

}  // namespace factoradic
