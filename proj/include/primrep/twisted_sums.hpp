#pragma once

#include "primrep/arith.hpp"
#include "primrep/characters.hpp"

#include <stdexcept>
#include <vector>

namespace primrep {

// Splits n by the prime supports of N and M: u-primes divide gcd(N, M),
// p-primes divide N only, q-primes divide M only, n1 is coprime to NM.
// Primes of N or M that miss n are kept with exponent 0.
struct NSplit {
    FactoredInteger n;
    std::vector<std::pair<long long, unsigned>> u_part;  // (u_s, c_s)
    std::vector<std::pair<long long, unsigned>> p_part;  // (p_i, gamma_i)
    std::vector<std::pair<long long, unsigned>> q_part;  // (q_j, nu_j)
    Int n1 = 1;  // coprime to N*M
    Int n2 = 1;  // n without q- and u-primes
    Int n3 = 1;  // n without u-primes
};

inline NSplit split(const FactoredInteger& n, long long N, long long M) {
    if (N < 1 || M < 1) throw std::invalid_argument("moduli must be positive");
    NSplit s;
    s.n = n;
    auto fN = factorize(N);
    auto fM = factorize(M);
    auto divides = [](const FactoredInteger& f, const Int& p) {
        for (const auto& [q, e] : f.factors)
            if (q == p) return true;
        return false;
    };
    auto exp_in_n = [&](const Int& p) -> unsigned {
        for (const auto& [q, e] : n.factors)
            if (q == p) return e;
        return 0;
    };
    for (const auto& [p, e] : fN.factors) {
        auto pl = static_cast<long long>(p);
        if (divides(fM, p))
            s.u_part.emplace_back(pl, exp_in_n(p));
        else
            s.p_part.emplace_back(pl, exp_in_n(p));
    }
    for (const auto& [p, e] : fM.factors) {
        if (!divides(fN, p)) s.q_part.emplace_back(static_cast<long long>(p), exp_in_n(p));
    }
    s.n1 = s.n2 = s.n3 = n.value;
    for (const auto& [p, e] : n.factors) {
        Int pe = ipow(p, e);
        bool inN = divides(fN, p), inM = divides(fM, p);
        if (inN && inM) {
            s.n1 /= pe;
            s.n2 /= pe;
            s.n3 /= pe;
        } else if (inM) {
            s.n1 /= pe;
            s.n2 /= pe;
        } else if (inN) {
            s.n1 /= pe;
        }
    }
    return s;
}

inline NSplit split(long long n, long long N, long long M) {
    return split(factorize(n), N, M);
}

// sigma_h^{psi,phi}(n) = sum_{m | n} psi(n/m) phi(m) m^h.
inline ExactScalar sigma_twisted(const DirichletCharacter& psi, const DirichletCharacter& phi,
                                 unsigned h, const FactoredInteger& n) {
    ExactScalar total = ExactScalar::zero();
    for (const Int& m : divisors(n)) {
        ExactScalar term = psi.evaluate(n.value / m) * phi.evaluate(m);
        if (term.is_zero()) continue;
        total = total + term.scale(Rational(ipow(m, h)));
    }
    return total;
}

inline ExactScalar sigma_twisted(const DirichletCharacter& psi, const DirichletCharacter& phi,
                                 unsigned h, long long n) {
    if (n < 1) throw std::domain_error("sigma_twisted requires n >= 1");
    return sigma_twisted(psi, phi, h, factorize(n));
}

// Literal double sum sum_{d^2|n} mu(d) sum_{m | n/d^2} psi(n/(m d^2)) phi(m) m^h.
// Reference oracle for the closed forms below.
inline ExactScalar mobius_weighted_sum_bruteforce(const DirichletCharacter& psi,
                                                  const DirichletCharacter& phi, unsigned h,
                                                  long long n) {
    if (n < 1) throw std::domain_error("n must be >= 1");
    ExactScalar total = ExactScalar::zero();
    for (const Int& dI : square_divisor_roots(factorize(n))) {
        auto d = static_cast<long long>(dI);
        int mu = mobius(factorize(d));
        if (mu == 0) continue;
        ExactScalar inner = sigma_twisted(psi, phi, h, n / (d * d));
        total = total + (mu == 1 ? inner : -inner);
    }
    return total;
}

namespace detail {

// Geometric part sum_{j=0}^{len-1} (unit * r^h)^j, summed term by term: the
// printed quotient degenerates when unit * r^h = 1 (possible for h = 0), and
// explicit summation handles every case uniformly.
inline ExactScalar geometric_sum(const RootOfUnity& unit, long long r, unsigned h, unsigned len) {
    ExactScalar total = ExactScalar::zero();
    Int rh = ipow(Int(r), h);
    Int power = 1;
    for (unsigned j = 0; j < len; ++j) {
        total = total + ExactScalar::from_unit(unit.pow(j)).scale(Rational(power));
        power *= rh;
    }
    return total;
}

}  // namespace detail

// Closed form for the Mobius-weighted twisted sum, arbitrary characters.
// Stays exact whenever every character value has order dividing 4.
inline ExactScalar mobius_weighted_sum_closed(const DirichletCharacter& psi,
                                              const DirichletCharacter& phi, unsigned h,
                                              const FactoredInteger& n) {
    long long N = psi.modulus(), M = phi.modulus();
    NSplit s = split(n, N, M);

    ExactScalar acc = phi.evaluate(s.n2).scale(Rational(ipow(s.n2, h)));
    for (const auto& [u, c] : s.u_part) {
        if (c == 0) continue;
        if (c == 1 || c >= 3) return ExactScalar::zero();
        acc = -acc;  // c == 2
    }
    for (const auto& [p, gamma] : s.p_part) {
        if (gamma < 2) continue;
        RootOfUnity conj_sq = phi.evaluate(p).unit().conjugate().pow(2);
        ExactScalar factor = ExactScalar::one() -
                             ExactScalar::from_unit(conj_sq).scale(Rational(1, ipow(Int(p), 2 * h)));
        acc = acc * factor;
    }
    for (const auto& [q, nu] : s.q_part) {
        if (nu == 0) continue;
        RootOfUnity val = psi.evaluate(q).unit();
        ExactScalar factor = ExactScalar::one();
        if (nu >= 2)
            factor = factor - ExactScalar::from_unit(val.conjugate().pow(2));
        acc = acc * factor * ExactScalar::from_unit(val.pow(nu));
    }
    for (const auto& [p, e] : n.factors) {
        auto r = static_cast<long long>(p);
        if (s.n1 % p != 0) continue;  // only primes coprime to NM
        unsigned lambda = e;
        RootOfUnity psi_r = psi.evaluate(r).unit();
        RootOfUnity phi_r = phi.evaluate(r).unit();
        ExactScalar second =
            ExactScalar::one() +
            ExactScalar::from_unit(psi_r * phi_r.conjugate()).scale(Rational(1, ipow(Int(r), h)));
        ExactScalar factor = second;
        if (lambda >= 2) {
            ExactScalar one_minus = ExactScalar::one() -
                                    ExactScalar::from_unit(psi_r.conjugate().pow(2));
            if (!one_minus.is_zero()) {
                RootOfUnity x_unit = phi_r * psi_r.conjugate();
                ExactScalar geo = detail::geometric_sum(x_unit, r, h, lambda - 1);
                // divide by (phi psi-bar r^h)^lambda: conjugate unit, rational scale
                ExactScalar first = one_minus * geo *
                                    ExactScalar::from_unit(x_unit.conjugate().pow(lambda));
                first = first.scale(Rational(1, ipow(Int(r), h * lambda)));
                factor = factor + first;
            }
        }
        acc = acc * factor;
    }
    return acc;
}

inline ExactScalar mobius_weighted_sum_closed(const DirichletCharacter& psi,
                                              const DirichletCharacter& phi, unsigned h,
                                              long long n) {
    if (n < 1) throw std::domain_error("n must be >= 1");
    return mobius_weighted_sum_closed(psi, phi, h, factorize(n));
}

// Real-character specialization: c(n) n2^h prod_{r | n} (1 + psi(r) phi-bar(r) / r^h).
inline ExactScalar mobius_weighted_sum_real(const DirichletCharacter& psi,
                                            const DirichletCharacter& phi, unsigned h,
                                            const FactoredInteger& n) {
    if (!psi.is_real())
        throw std::invalid_argument("mobius_weighted_sum_real requires a real psi");
    long long N = psi.modulus(), M = phi.modulus();
    NSplit s = split(n, N, M);

    ExactScalar c = phi.evaluate(s.n2);
    for (const auto& [u, cc] : s.u_part) {
        if (cc == 0) continue;
        if (cc == 1 || cc >= 3) return ExactScalar::zero();
        c = -c;
    }
    for (const auto& [q, nu] : s.q_part) {
        if (nu == 0) continue;
        if (nu >= 2) return ExactScalar::zero();
        c = c * psi.evaluate(q);
    }
    for (const auto& [p, gamma] : s.p_part) {
        if (gamma < 2) continue;
        RootOfUnity conj_sq = phi.evaluate(Int(p) * p).unit().conjugate();
        c = c * (ExactScalar::one() -
                 ExactScalar::from_unit(conj_sq).scale(Rational(1, ipow(Int(p), 2 * h))));
    }
    ExactScalar acc = c.scale(Rational(ipow(s.n2, h)));
    for (const auto& [p, e] : n.factors) {
        auto r = static_cast<long long>(p);
        ExactScalar pv = psi.evaluate(r) * phi.evaluate(r).conjugate();
        acc = acc * (ExactScalar::one() + pv.scale(Rational(1, ipow(Int(r), h))));
    }
    return acc;
}

inline ExactScalar mobius_weighted_sum_real(const DirichletCharacter& psi,
                                            const DirichletCharacter& phi, unsigned h,
                                            long long n) {
    if (n < 1) throw std::domain_error("n must be >= 1");
    return mobius_weighted_sum_real(psi, phi, h, factorize(n));
}

// sum_{d^2|n} mu(d) delta_{t | n/d^2} sigma_h^{psi,phi}(n/(t d^2)): the
// indicator forces d^2 | n/t, so this is the closed form evaluated at n/t.
inline ExactScalar primitive_dilated_sum(const DirichletCharacter& psi,
                                         const DirichletCharacter& phi, unsigned h, long long t,
                                         long long n) {
    if (t < 1) throw std::invalid_argument("dilation must be >= 1");
    if (n < 1) throw std::domain_error("n must be >= 1");
    if (n % t != 0) return ExactScalar::zero();
    return mobius_weighted_sum_closed(psi, phi, h, n / t);
}

}  // namespace primrep
