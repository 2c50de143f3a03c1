#pragma once

#include "primrep/arith.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace primrep {

// Coefficients (a_1,...,a_k) of the diagonal form a_1 x_1^2 + ... + a_k x_k^2.
struct DiagonalForm {
    std::vector<long long> coefficients;

    explicit DiagonalForm(std::vector<long long> coeffs) : coefficients(std::move(coeffs)) {
        if (coefficients.empty()) throw std::invalid_argument("form needs at least one variable");
        for (long long a : coefficients)
            if (a < 1) throw std::invalid_argument("form coefficients must be positive");
    }

    std::size_t rank() const { return coefficients.size(); }
    bool operator==(const DiagonalForm&) const = default;
};

// Truncated theta-series coefficients: counts[n] = r_a(n) for n <= bound.
struct RepSeries {
    DiagonalForm form;
    long long bound;
    std::vector<Int> counts;
};

// Reference oracle: bounded nested enumeration over |x_i| <= sqrt(n/a_i).
// The last coordinate is resolved by an exact square test.
inline long long count_representations(const DiagonalForm& form, long long n) {
    if (n < 0) return 0;
    const auto& a = form.coefficients;
    long long total = 0;
    std::function<void(std::size_t, long long)> rec = [&](std::size_t i, long long rem) {
        if (i + 1 == a.size()) {
            if (rem == 0) {
                total += 1;
            } else if (rem % a[i] == 0) {
                long long s = rem / a[i];
                if (is_perfect_square(s)) total += 2;
            }
            return;
        }
        long long xmax = isqrt_ll(rem / a[i]);
        for (long long x = -xmax; x <= xmax; ++x) rec(i + 1, rem - a[i] * x * x);
    };
    rec(0, n);
    return total;
}

// Solutions with gcd(x_1,...,x_k) = 1; the all-zero vector has gcd 0 and is
// never primitive, so n = 0 has none.
inline long long count_primitive(const DiagonalForm& form, long long n) {
    if (n < 1) throw std::domain_error("count_primitive requires n >= 1");
    const auto& a = form.coefficients;
    long long total = 0;
    std::function<void(std::size_t, long long, long long)> rec =
        [&](std::size_t i, long long rem, long long g) {
            if (i + 1 == a.size()) {
                if (rem == 0) {
                    if (g == 1) total += 1;
                } else if (rem % a[i] == 0) {
                    long long s = rem / a[i];
                    long long x = isqrt_ll(s);
                    if (x * x == s && gcd_ll(g, x) == 1) total += 2;
                }
                return;
            }
            long long xmax = isqrt_ll(rem / a[i]);
            for (long long x = -xmax; x <= xmax; ++x)
                rec(i + 1, rem - a[i] * x * x, gcd_ll(g, x));
        };
    rec(0, n, 0);
    return total;
}

// Fast oracle: convolution of the k one-dimensional series sum_x q^{a x^2},
// truncated at bound.
inline RepSeries rep_series(const DiagonalForm& form, long long bound) {
    if (bound < 0) throw std::invalid_argument("bound must be >= 0");
    std::vector<Int> acc(static_cast<std::size_t>(bound) + 1, 0);
    acc[0] = 1;
    for (long long a : form.coefficients) {
        std::vector<Int> next(acc.size(), 0);
        for (long long x = 0; a * x * x <= bound; ++x) {
            long long v = a * x * x;
            Int w = (x == 0) ? 1 : 2;
            for (long long m = 0; m + v <= bound; ++m) {
                if (acc[static_cast<std::size_t>(m)] != 0)
                    next[static_cast<std::size_t>(m + v)] += w * acc[static_cast<std::size_t>(m)];
            }
        }
        acc = std::move(next);
    }
    return RepSeries{form, bound, std::move(acc)};
}

// r^p(n) = sum_{d^2 | n} mu(d) r(n / d^2).
template <class RepFn>
Int primitive_from_rep(RepFn&& r, long long n) {
    if (n < 1) throw std::domain_error("n must be >= 1");
    Int total = 0;
    for (const Int& dI : square_divisor_roots(factorize(n))) {
        auto d = static_cast<long long>(dI);
        int mu = mobius(factorize(d));
        if (mu != 0) total += mu * Int(r(n / (d * d)));
    }
    return total;
}

// r(n) = sum_{d^2 | n} r^p(n / d^2).
template <class RepFn>
Int rep_from_primitive(RepFn&& rp, long long n) {
    if (n < 1) throw std::domain_error("n must be >= 1");
    Int total = 0;
    for (const Int& dI : square_divisor_roots(factorize(n))) {
        auto d = static_cast<long long>(dI);
        total += Int(rp(n / (d * d)));
    }
    return total;
}

// Inclusion-exclusion over prime subsets: independent re-derivation of
// primitive_from_rep; subsets whose squared product does not divide n are
// skipped.
template <class RepFn>
Int primitive_by_inclusion_exclusion(RepFn&& r, const FactoredInteger& n) {
    std::vector<long long> primes;
    for (const auto& [p, e] : n.factors) primes.push_back(static_cast<long long>(p));
    auto nv = static_cast<long long>(n.value);
    Int total = 0;
    std::size_t t = primes.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << t); ++mask) {
        long long sq = 1;
        bool ok = true;
        int sign = 1;
        for (std::size_t j = 0; j < t; ++j) {
            if (mask & (std::size_t{1} << j)) {
                sq *= primes[j] * primes[j];
                sign = -sign;
                if (nv % sq != 0) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) total += sign * Int(r(nv / sq));
    }
    return total;
}

namespace detail {

// Enumerates canonical value tuples per equal-coefficient group
// (non-increasing |x|, weighted by sign choices and permutations) so that
// bulk sweeps over all n <= bound stay feasible for six and eight squares.
struct GroupEnumerator {
    long long coeff;
    int size;
};

inline void bulk_enumerate(const std::vector<GroupEnumerator>& groups, long long bound,
                           std::vector<long long>& all, std::vector<long long>* primitive) {
    static const long long factorial[17] = {1,
                                            1,
                                            2,
                                            6,
                                            24,
                                            120,
                                            720,
                                            5040,
                                            40320,
                                            362880,
                                            3628800,
                                            39916800,
                                            479001600,
                                            6227020800LL,
                                            87178291200LL,
                                            1307674368000LL,
                                            20922789888000LL};
    for (const auto& g : groups)
        if (g.size > 16) throw std::invalid_argument("rank too large for bulk enumeration");
    // recursion over groups; inside each group over non-increasing values
    std::function<void(std::size_t, long long, long long, long long)> next_group =
        [&](std::size_t gi, long long used, long long weight, long long g) {
            if (gi == groups.size()) {
                all[static_cast<std::size_t>(used)] += weight;
                if (primitive && g == 1)
                    (*primitive)[static_cast<std::size_t>(used)] += weight;
                return;
            }
            const auto& grp = groups[gi];
            // values[j]: current non-increasing assignment within the group
            std::function<void(int, long long, long long, long long, long long, int)> place =
                [&](int slot, long long prev, long long used2, long long w2, long long g2,
                    int run) {
                    if (slot == grp.size) {
                        next_group(gi + 1, used2, w2 / factorial[run], g2);
                        return;
                    }
                    long long budget = bound - used2;
                    long long vmax = isqrt_ll(budget / grp.coeff);
                    if (vmax > prev) vmax = prev;
                    for (long long v = vmax; v >= 0; --v) {
                        long long w3 = w2;
                        int run3;
                        if (v == prev && slot > 0) {
                            run3 = run + 1;
                        } else {
                            w3 = w2 / factorial[run];
                            run3 = 1;
                        }
                        long long signs = (v == 0) ? 1 : 2;
                        place(slot + 1, v, used2 + grp.coeff * v * v, w3 * signs,
                              gcd_ll(g2, v), run3);
                    }
                };
            place(0, bound, used, weight * factorial[grp.size], g, 0);
        };
    next_group(0, 0, 1, 0);
}

}  // namespace detail

// Bulk enumeration oracle: counts[n] = r_a(n) for all n <= bound, by direct
// lattice-point enumeration (orbit representatives within equal-coefficient
// groups). Independent of the series convolution.
inline std::vector<long long> count_all_by_enumeration(const DiagonalForm& form, long long bound) {
    std::map<long long, int> by_coeff;
    for (long long a : form.coefficients) by_coeff[a]++;
    std::vector<detail::GroupEnumerator> groups;
    for (auto [a, c] : by_coeff) groups.push_back({a, c});
    std::vector<long long> all(static_cast<std::size_t>(bound) + 1, 0);
    detail::bulk_enumerate(groups, bound, all, nullptr);
    return all;
}

// Same enumeration, returning (all, primitive) histograms in one pass.
inline std::pair<std::vector<long long>, std::vector<long long>> count_all_and_primitive(
    const DiagonalForm& form, long long bound) {
    std::map<long long, int> by_coeff;
    for (long long a : form.coefficients) by_coeff[a]++;
    std::vector<detail::GroupEnumerator> groups;
    for (auto [a, c] : by_coeff) groups.push_back({a, c});
    std::vector<long long> all(static_cast<std::size_t>(bound) + 1, 0);
    std::vector<long long> prim(static_cast<std::size_t>(bound) + 1, 0);
    detail::bulk_enumerate(groups, bound, all, &prim);
    return {std::move(all), std::move(prim)};
}

}  // namespace primrep
