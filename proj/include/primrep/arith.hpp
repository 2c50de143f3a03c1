#pragma once

#include "primrep/int.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace primrep {

// A positive integer together with its canonical prime factorization:
// primes strictly increasing, every exponent >= 1, empty list for n = 1.
struct FactoredInteger {
    Int value = 1;
    std::vector<std::pair<Int, unsigned>> factors;

    bool operator==(const FactoredInteger&) const = default;
};

namespace detail {

inline Int mulmod(const Int& a, const Int& b, const Int& m) { return a * b % m; }

inline Int powmod(Int base, Int exp, const Int& m) {
    Int r = 1;
    base %= m;
    while (exp > 0) {
        if (boost::multiprecision::bit_test(exp, 0)) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

inline bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, unsigned s) {
    Int x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;  // a witnesses compositeness
}

}  // namespace detail

// Deterministic Miller-Rabin for n < 3.3 * 10^24 (the published 12-base
// bound); the same bases act as a strong-pseudoprime screen beyond that,
// far past anything the fitting paths can produce.
inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    unsigned s = 0;
    while (!boost::multiprecision::bit_test(d, 0)) {
        d >>= 1;
        ++s;
    }
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (detail::miller_rabin_witness(n, a, d, s)) return false;
    }
    return true;
}

namespace detail {

// Pollard rho with Brent cycle detection; deterministic (fixed polynomial
// offsets tried in order), precondition: n composite, odd, not a prime power
// caught by trial division.
inline Int pollard_rho(const Int& n) {
    if (n % 2 == 0) return 2;
    for (Int c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        Int q = 1;
        int steps = 0;
        while (d == 1) {
            x = (mulmod(x, x, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            Int diff = x > y ? x - y : y - x;
            if (diff == 0) break;  // cycle without factor, retry with next c
            q = mulmod(q, diff, n);
            if (++steps % 64 == 0) {
                d = boost::multiprecision::gcd(q, n);
                q = 1;
            }
        }
        if (d == 1 && x != y) d = boost::multiprecision::gcd(q, n);
        if (d > 1 && d < n) return d;
    }
}

inline void factor_into(Int n, std::vector<Int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    Int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

inline constexpr std::int64_t kTrialBound = 1 << 20;

}  // namespace detail

inline FactoredInteger factorize(Int n) {
    if (n < 1) throw std::domain_error("factorize requires n >= 1");
    FactoredInteger f;
    f.value = n;
    std::vector<Int> primes;
    for (std::int64_t p = 2; p <= detail::kTrialBound && Int(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            primes.emplace_back(p);
            n /= p;
        }
    }
    if (n > 1) {
        if (n < Int(detail::kTrialBound) * detail::kTrialBound || is_prime(n)) {
            primes.push_back(n);
        } else {
            detail::factor_into(n, primes);
        }
    }
    std::sort(primes.begin(), primes.end());
    for (const Int& p : primes) {
        if (!f.factors.empty() && f.factors.back().first == p)
            ++f.factors.back().second;
        else
            f.factors.emplace_back(p, 1u);
    }
    return f;
}

inline FactoredInteger factorize(long long n) { return factorize(Int(n)); }

inline int mobius(const FactoredInteger& n) {
    for (const auto& [p, e] : n.factors)
        if (e >= 2) return 0;
    return n.factors.size() % 2 == 0 ? 1 : -1;
}

inline int delta_divides(const Int& d, const Int& n) {
    if (d < 1) throw std::domain_error("delta_divides requires d >= 1");
    return n % d == 0 ? 1 : 0;
}

inline std::vector<Int> divisors(const FactoredInteger& n) {
    std::vector<Int> divs{1};
    for (const auto& [p, e] : n.factors) {
        std::size_t base = divs.size();
        Int pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

// All d with d^2 | n, ascending: the divisors of prod p^floor(e/2).
inline std::vector<Int> square_divisor_roots(const FactoredInteger& n) {
    FactoredInteger half;
    for (const auto& [p, e] : n.factors) {
        if (e >= 2) {
            half.factors.emplace_back(p, e / 2);
            half.value *= ipow(p, e / 2);
        }
    }
    return divisors(half);
}

inline unsigned ord_p(const Int& p, const FactoredInteger& n) {
    if (!is_prime(p)) throw std::domain_error("ord_p requires a prime p");
    for (const auto& [q, e] : n.factors)
        if (q == p) return e;
    return 0;
}

}  // namespace primrep
