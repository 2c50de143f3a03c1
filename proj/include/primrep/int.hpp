#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace primrep {

// All public arithmetic is arbitrary precision: catalog coefficients and
// n^h terms overflow 64 bits already for h = 3, n around 10^6.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

// Renders "p" for integers and "p/q" otherwise.
inline std::string to_string(const Rational& q) {
    std::string s = numerator(q).str();
    if (!is_integer(q)) s += "/" + denominator(q).str();
    return s;
}

inline Int ipow(Int base, unsigned exp) {
    Int r = 1;
    while (exp) {
        if (exp & 1u) r *= base;
        base *= base;
        exp >>= 1u;
    }
    return r;
}

inline long long ipow_ll(long long base, unsigned exp) {
    long long r = 1;
    while (exp--) r *= base;
    return r;
}

// Floor square root; exact for perfect squares.
inline Int isqrt(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt of negative number");
    return boost::multiprecision::sqrt(n);
}

inline long long isqrt_ll(long long n) {
    if (n < 0) throw std::domain_error("isqrt of negative number");
    auto r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_perfect_square(long long n) {
    if (n < 0) return false;
    long long r = isqrt_ll(n);
    return r * r == n;
}

inline long long gcd_ll(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Parses an exact rational from "p", "-p", or "p/q" (q > 0 after
// normalization). Rejects anything else.
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational: \"" + text + "\"");
    }
}

}  // namespace primrep
