#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace qparadox {

// Exact arithmetic backbone. Rates, pooled rates and reversal verdicts are
// ordering questions, so they must never pass through floating point.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den) {
    return Rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& r) {
    return r.convert_to<double>();
}

inline int sign_of(const Rational& r) {
    return r.sign();
}

// "num/den" in lowest terms; integers render without the slash.
std::string fraction_string(const Rational& r);

// Fixed-point rendering with `places` digits after the point, rounding
// half to even on the exact value.
std::string decimal_string(const Rational& r, unsigned places);

// Parses a decimal literal ("0.80", "-3", "1.2e-3") into the exact rational
// it denotes. Throws std::invalid_argument on malformed input.
Rational rational_from_decimal(std::string_view text);

// Exact rational for the shortest decimal that round-trips to `value`,
// so 0.8 becomes 4/5 rather than the binary expansion of the double.
// Throws std::invalid_argument on non-finite input.
Rational rational_from_double(double value);

}  // namespace qparadox
