#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace expthresh {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Parses "p/q", an integer, or a finite decimal such as "0.125" exactly.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& q);

BigInt floor_of(const Rational& q);
BigInt ceil_of(const Rational& q);

BigInt binomial(unsigned long n, unsigned long k);

/// Integer power with a signed exponent (q must be nonzero for negative e).
Rational pow(const Rational& q, long e);

/// Exact k-th root when both numerator and denominator are perfect k-th powers.
bool exact_root(const Rational& q, unsigned long k, Rational& out);

inline Rational numerator_of(const Rational& q) { return Rational(boost::multiprecision::numerator(q)); }
inline Rational denominator_of(const Rational& q) { return Rational(boost::multiprecision::denominator(q)); }

}  // namespace expthresh
