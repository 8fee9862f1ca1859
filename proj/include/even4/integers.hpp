#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace even4 {

// Exact arithmetic substrate: unbounded integers and rationals everywhere,
// no fixed-width arithmetic even in intermediate steps.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using boost::multiprecision::abs;
using boost::multiprecision::gcd;

inline Int pow2(unsigned k) { return Int(1) << k; }

/// 2-adic valuation of a nonzero integer.
inline unsigned two_adic_valuation(const Int& n) {
    if (n == 0) throw std::invalid_argument("two_adic_valuation: zero has no valuation");
    return static_cast<unsigned>(boost::multiprecision::lsb(abs(n)));
}

inline bool is_power_of_two(const Int& n) {
    return n > 0 && (n & (n - 1)) == 0;
}

/// Largest power of two dividing n (the 2-part of n).
inline Int two_power_part(const Int& n) {
    if (n < 1) throw std::invalid_argument("two_power_part: argument must be >= 1");
    return pow2(two_adic_valuation(n));
}

inline bool is_even(const Int& n) { return (n & 1) == 0; }

inline bool is_integer(const Rat& q) { return denominator(q) == 1; }

inline std::string to_string(const Int& n) { return n.str(); }

/// Canonical rational rendering: "n" when integral, "n/d" otherwise (d > 0).
inline std::string to_string(const Rat& q) {
    if (is_integer(q)) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace even4
