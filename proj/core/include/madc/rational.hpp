#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace madc {

// All load bookkeeping is exact.  Binomials can exceed 64 bits for the
// parameter ranges the sweep tool accepts, so both types are arbitrary
// precision.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Canonical "p/q" rendering with q >= 1 and gcd(p, q) = 1; integers render
// with an explicit "/1" so the format is uniform.
std::string to_fraction_string(const Rational& value);

// Parses "p/q" or a bare integer "p".  Throws InvalidParameters on anything
// else (including q = 0).
Rational fraction_from_string(const std::string& text);

double to_double(const Rational& value);

// Exact narrowing; throws InvalidParameters when the value does not fit.
long long to_int64(const BigInt& value);
std::uint64_t to_uint64(const BigInt& value);

}  // namespace madc
