#pragma once

#include "primrep/twisted_sums.hpp"

#include <array>
#include <atomic>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <thread>
#include <vector>

namespace primrep {

// Exhaustive check of the Mobius-weighted twisted-sum identity: for every
// pair of characters with moduli up to modulus_bound, every h <= h_max and
// every n <= n_max, the literal double sum must equal the closed form.
// Real pairs are compared exactly (64/128-bit integer arithmetic; the value
// ranges provably fit at these bounds); pairs involving higher-order values
// run in complex doubles within tol * n^h. For real psi the real-character
// specialization is checked against the same data.
struct TheoremSweepOptions {
    long long modulus_bound = 36;
    long long n_max = 3000;
    unsigned h_max = 3;
    double tol = 1e-9;
    int threads = 0;  // 0: hardware concurrency
};

struct TheoremSweepStats {
    unsigned long long pairs = 0;
    unsigned long long checks = 0;        // closed form vs literal double sum
    unsigned long long mismatches = 0;
    unsigned long long cform_checks = 0;  // real-psi specialization vs double sum
    unsigned long long cform_mismatches = 0;
    std::vector<std::string> failures;  // first few, in deterministic order
};

namespace sweep_detail {

constexpr unsigned kMaxH = 3;

struct CharData {
    bool real = false;
    long long modulus = 1;
    std::vector<std::int8_t> ival;           // valid when real
    std::vector<std::complex<double>> cval;  // always valid
};

inline CharData make_char_data(const DirichletCharacter& chi) {
    CharData d;
    d.modulus = chi.modulus();
    d.real = chi.is_real();
    d.ival.resize(static_cast<std::size_t>(d.modulus), 0);
    d.cval.resize(static_cast<std::size_t>(d.modulus), {0.0, 0.0});
    for (long long m = 0; m < d.modulus; ++m) {
        ExactScalar v = chi.evaluate(m);
        d.cval[static_cast<std::size_t>(m)] = v.to_complex();
        if (d.real && !v.is_zero())
            d.ival[static_cast<std::size_t>(m)] =
                static_cast<std::int8_t>(v.as_rational() == 1 ? 1 : -1);
    }
    return d;
}

struct Term {
    std::int32_t m;
    std::int32_t q;  // n / (m d^2)
    std::int8_t mu;
};

struct PrimePower {
    std::int32_t p;
    std::int8_t e;
};

struct SweepTables {
    std::vector<std::vector<Term>> terms;          // per n
    std::vector<std::vector<PrimePower>> factors;  // per n
};

inline SweepTables build_tables(long long n_max) {
    SweepTables t;
    t.terms.resize(static_cast<std::size_t>(n_max) + 1);
    t.factors.resize(static_cast<std::size_t>(n_max) + 1);
    std::vector<std::int32_t> spf(static_cast<std::size_t>(n_max) + 1, 0);
    for (long long i = 2; i <= n_max; ++i) {
        if (spf[static_cast<std::size_t>(i)] == 0)
            for (long long j = i; j <= n_max; j += i)
                if (spf[static_cast<std::size_t>(j)] == 0)
                    spf[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(i);
    }
    std::vector<std::int8_t> mu(static_cast<std::size_t>(n_max) + 1, 0);
    mu[1] = 1;
    for (long long n = 2; n <= n_max; ++n) {
        long long v = n;
        auto& fl = t.factors[static_cast<std::size_t>(n)];
        while (v > 1) {
            std::int32_t p = spf[static_cast<std::size_t>(v)];
            std::int8_t e = 0;
            while (v % p == 0) {
                v /= p;
                ++e;
            }
            fl.push_back({p, e});
        }
        bool squarefree = true;
        for (const auto& pp : fl)
            if (pp.e > 1) squarefree = false;
        mu[static_cast<std::size_t>(n)] =
            squarefree ? static_cast<std::int8_t>(fl.size() % 2 == 0 ? 1 : -1) : std::int8_t{0};
    }
    for (long long n = 1; n <= n_max; ++n) {
        auto& list = t.terms[static_cast<std::size_t>(n)];
        for (long long d = 1; d * d <= n; ++d) {
            if (n % (d * d) != 0 || mu[static_cast<std::size_t>(d)] == 0) continue;
            long long rest = n / (d * d);
            for (long long m = 1; m <= rest; ++m) {
                if (rest % m != 0) continue;
                list.push_back({static_cast<std::int32_t>(m),
                                static_cast<std::int32_t>(rest / m),
                                mu[static_cast<std::size_t>(d)]});
            }
        }
    }
    return t;
}

struct Fraction128 {
    __int128 num = 0;
    __int128 den = 1;
};

inline long long coprime_part(const std::vector<PrimePower>& factors, long long n,
                              long long modulus) {
    long long r = n;
    for (const auto& pp : factors)
        if (modulus % pp.p == 0)
            for (int i = 0; i < pp.e; ++i) r /= pp.p;
    return r;
}

// General closed form over {-1,0,1} tables, all h at once. The higher-order
// branches vanish identically for real characters, so evaluating the printed
// factors literally never leaves integer arithmetic.
inline void closed_real_all(const std::vector<PrimePower>& factors, long long n, unsigned h_max,
                            const CharData& psi, const CharData& phi, Fraction128 out[]) {
    long long n2 = coprime_part(factors, n, phi.modulus);
    int sign = phi.ival[static_cast<std::size_t>(n2 % phi.modulus)];
    __int128 n2h = 1;
    for (unsigned h = 0; h <= h_max; ++h) {
        out[h].num = sign * n2h;
        out[h].den = 1;
        n2h *= n2;
    }
    for (const auto& pp : factors) {
        bool inN = psi.modulus % pp.p == 0;
        bool inM = phi.modulus % pp.p == 0;
        if (inN && inM) {
            if (pp.e == 1 || pp.e >= 3) {
                for (unsigned h = 0; h <= h_max; ++h) out[h] = {0, 1};
                return;
            }
            for (unsigned h = 0; h <= h_max; ++h) out[h].num = -out[h].num;
        } else if (inN) {
            if (pp.e >= 2) {
                __int128 ph = 1;
                for (unsigned h = 0; h <= h_max; ++h) {
                    __int128 p2h = ph * ph;
                    out[h].num *= (p2h - 1);  // real phi: conj(phi(p))^2 = 1
                    out[h].den *= p2h;
                    ph *= pp.p;
                }
            }
        } else if (inM) {
            if (pp.e >= 2) {  // real psi: 1 - psi(q)^2 = 0
                for (unsigned h = 0; h <= h_max; ++h) out[h] = {0, 1};
                return;
            }
            int s = psi.ival[static_cast<std::size_t>(pp.p % psi.modulus)];
            for (unsigned h = 0; h <= h_max; ++h) out[h].num *= s;
        } else {
            int s = psi.ival[static_cast<std::size_t>(pp.p % psi.modulus)] *
                    phi.ival[static_cast<std::size_t>(pp.p % phi.modulus)];
            __int128 ph = 1;
            for (unsigned h = 0; h <= h_max; ++h) {
                out[h].num *= (ph + s);
                out[h].den *= ph;
                ph *= pp.p;
            }
        }
    }
}

// Thm 1.2 (2) shape over integer tables. The phi(p^2) factor goes through
// the value table at p^2 mod M rather than squaring, so this is a distinct
// evaluation route from closed_real_all.
inline void cform_real_all(const std::vector<PrimePower>& factors, long long n, unsigned h_max,
                           const CharData& psi, const CharData& phi, Fraction128 out[]) {
    long long n2 = coprime_part(factors, n, phi.modulus);
    int csign = phi.ival[static_cast<std::size_t>(n2 % phi.modulus)];
    __int128 num0 = csign;
    for (const auto& pp : factors) {
        bool inN = psi.modulus % pp.p == 0;
        bool inM = phi.modulus % pp.p == 0;
        if (inN && inM) {
            if (pp.e == 1 || pp.e >= 3) {
                for (unsigned h = 0; h <= h_max; ++h) out[h] = {0, 1};
                return;
            }
            num0 = -num0;
        } else if (inM) {
            if (pp.e >= 2) {
                for (unsigned h = 0; h <= h_max; ++h) out[h] = {0, 1};
                return;
            }
            num0 *= psi.ival[static_cast<std::size_t>(pp.p % psi.modulus)];
        }
    }
    __int128 n2h = 1;
    for (unsigned h = 0; h <= h_max; ++h) {
        out[h].num = num0 * n2h;
        out[h].den = 1;
        n2h *= n2;
    }
    for (const auto& pp : factors) {
        bool inN = psi.modulus % pp.p == 0;
        bool inM = phi.modulus % pp.p == 0;
        if (inN && !inM) {
            if (pp.e >= 2) {
                long long sq = static_cast<long long>(pp.p) * pp.p;
                int w = phi.ival[static_cast<std::size_t>(sq % phi.modulus)];
                __int128 ph = 1;
                for (unsigned h = 0; h <= h_max; ++h) {
                    __int128 p2h = ph * ph;
                    out[h].num *= (p2h - w);
                    out[h].den *= p2h;
                    ph *= pp.p;
                }
            }
        } else if (!inN && !inM) {
            int s = psi.ival[static_cast<std::size_t>(pp.p % psi.modulus)] *
                    phi.ival[static_cast<std::size_t>(pp.p % phi.modulus)];
            __int128 ph = 1;
            for (unsigned h = 0; h <= h_max; ++h) {
                out[h].num *= (ph + s);
                out[h].den *= ph;
                ph *= pp.p;
            }
        }
    }
}

inline std::complex<double> cpow_int(std::complex<double> base, int e) {
    std::complex<double> r{1.0, 0.0};
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// Closed form in complex doubles for pairs outside the exact regime.
inline void closed_complex_all(const std::vector<PrimePower>& factors, long long n,
                               unsigned h_max, const CharData& psi, const CharData& phi,
                               std::complex<double> out[]) {
    long long n2 = coprime_part(factors, n, phi.modulus);
    auto base = phi.cval[static_cast<std::size_t>(n2 % phi.modulus)];
    double n2h = 1.0;
    for (unsigned h = 0; h <= h_max; ++h) {
        out[h] = base * n2h;
        n2h *= static_cast<double>(n2);
    }
    for (const auto& pp : factors) {
        bool inN = psi.modulus % pp.p == 0;
        bool inM = phi.modulus % pp.p == 0;
        if (inN && inM) {
            if (pp.e == 1 || pp.e >= 3) {
                for (unsigned h = 0; h <= h_max; ++h) out[h] = {0.0, 0.0};
                return;
            }
            for (unsigned h = 0; h <= h_max; ++h) out[h] = -out[h];
        } else if (inN) {
            if (pp.e >= 2) {
                auto w = std::conj(phi.cval[static_cast<std::size_t>(pp.p % phi.modulus)]);
                auto w2 = w * w;
                double ph = 1.0;
                for (unsigned h = 0; h <= h_max; ++h) {
                    out[h] *= (1.0 - w2 / (ph * ph));
                    ph *= pp.p;
                }
            }
        } else if (inM) {
            auto w = psi.cval[static_cast<std::size_t>(pp.p % psi.modulus)];
            auto f = cpow_int(w, pp.e);
            if (pp.e >= 2) f *= (1.0 - std::conj(w) * std::conj(w));
            for (unsigned h = 0; h <= h_max; ++h) out[h] *= f;
        } else {
            auto wpsi = psi.cval[static_cast<std::size_t>(pp.p % psi.modulus)];
            auto wphi = phi.cval[static_cast<std::size_t>(pp.p % phi.modulus)];
            auto one_minus = 1.0 - std::conj(wpsi) * std::conj(wpsi);
            auto u = wphi * std::conj(wpsi);
            auto second_unit = wpsi * std::conj(wphi);
            bool geo = pp.e >= 2 && std::abs(one_minus) > 1e-14;
            auto ubar_e = geo ? cpow_int(std::conj(u), pp.e) : std::complex<double>{};
            double ph = 1.0;
            for (unsigned h = 0; h <= h_max; ++h) {
                std::complex<double> factor = 1.0 + second_unit / ph;
                if (geo) {
                    std::complex<double> g{0.0, 0.0};
                    double power = 1.0;
                    for (int j = 0; j + 2 <= pp.e; ++j) {
                        g += cpow_int(u, j) * power;
                        power *= ph;
                    }
                    double phl = 1.0;
                    for (int i = 0; i < pp.e; ++i) phl *= ph;
                    factor += one_minus * g * ubar_e / phl;
                }
                out[h] *= factor;
                ph *= pp.p;
            }
        }
    }
}

// Thm 1.2 (2) shape, complex path (psi real, phi arbitrary).
inline void cform_complex_all(const std::vector<PrimePower>& factors, long long n,
                              unsigned h_max, const CharData& psi, const CharData& phi,
                              std::complex<double> out[]) {
    long long n2 = coprime_part(factors, n, phi.modulus);
    std::complex<double> c = phi.cval[static_cast<std::size_t>(n2 % phi.modulus)];
    for (const auto& pp : factors) {
        bool inN = psi.modulus % pp.p == 0;
        bool inM = phi.modulus % pp.p == 0;
        if (inN && inM) {
            if (pp.e == 1 || pp.e >= 3) {
                for (unsigned h = 0; h <= h_max; ++h) out[h] = {0.0, 0.0};
                return;
            }
            c = -c;
        } else if (inM) {
            if (pp.e >= 2) {
                for (unsigned h = 0; h <= h_max; ++h) out[h] = {0.0, 0.0};
                return;
            }
            c *= psi.cval[static_cast<std::size_t>(pp.p % psi.modulus)];
        }
    }
    double n2h = 1.0;
    for (unsigned h = 0; h <= h_max; ++h) {
        out[h] = c * n2h;
        n2h *= static_cast<double>(n2);
    }
    for (const auto& pp : factors) {
        bool inN = psi.modulus % pp.p == 0;
        bool inM = phi.modulus % pp.p == 0;
        if (inN && !inM) {
            if (pp.e >= 2) {
                long long sq = static_cast<long long>(pp.p) * pp.p;
                auto w = std::conj(phi.cval[static_cast<std::size_t>(sq % phi.modulus)]);
                double ph = 1.0;
                for (unsigned h = 0; h <= h_max; ++h) {
                    out[h] *= (1.0 - w / (ph * ph));
                    ph *= pp.p;
                }
            }
        } else if (!inN && !inM) {
            auto w = psi.cval[static_cast<std::size_t>(pp.p % psi.modulus)] *
                     std::conj(phi.cval[static_cast<std::size_t>(pp.p % phi.modulus)]);
            double ph = 1.0;
            for (unsigned h = 0; h <= h_max; ++h) {
                out[h] *= (1.0 + w / ph);
                ph *= pp.p;
            }
        }
    }
}

}  // namespace sweep_detail

inline TheoremSweepStats run_theorem_sweep(const TheoremSweepOptions& opt) {
    using namespace sweep_detail;
    if (opt.h_max > kMaxH) throw std::invalid_argument("h_max beyond the sweep's proven ranges");
    SweepTables tables = build_tables(opt.n_max);

    std::vector<std::vector<CharData>> chars(static_cast<std::size_t>(opt.modulus_bound) + 1);
    for (long long N = 1; N <= opt.modulus_bound; ++N)
        for (const auto& chi : enumerate_characters_mod(N))
            chars[static_cast<std::size_t>(N)].push_back(make_char_data(chi));

    struct Job {
        long long N, M;
    };
    std::vector<Job> jobs;
    for (long long N = 1; N <= opt.modulus_bound; ++N)
        for (long long M = 1; M <= opt.modulus_bound; ++M) jobs.push_back({N, M});

    struct JobResult {
        unsigned long long pairs = 0, checks = 0, mismatches = 0;
        unsigned long long cform_checks = 0, cform_mismatches = 0;
        std::vector<std::string> failures;
    };
    std::vector<JobResult> results(jobs.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        std::array<Fraction128, kMaxH + 1> rhs_i, cf_i;
        std::array<std::complex<double>, kMaxH + 1> rhs_c, cf_c;
        while (true) {
            std::size_t ji = next.fetch_add(1);
            if (ji >= jobs.size()) return;
            const Job& job = jobs[ji];
            JobResult& res = results[ji];
            const auto& psis = chars[static_cast<std::size_t>(job.N)];
            const auto& phis = chars[static_cast<std::size_t>(job.M)];
            for (std::size_t pi = 0; pi < psis.size(); ++pi) {
                for (std::size_t qi = 0; qi < phis.size(); ++qi) {
                    const CharData& psi = psis[pi];
                    const CharData& phi = phis[qi];
                    ++res.pairs;
                    bool exact = psi.real && phi.real;
                    auto report = [&](const char* kind, unsigned h, long long n) {
                        if (res.failures.size() >= 5) return;
                        std::ostringstream os;
                        os << kind << " mismatch N=" << job.N << " M=" << job.M << " psi#" << pi
                           << " phi#" << qi << " h=" << h << " n=" << n;
                        res.failures.push_back(os.str());
                    };
                    for (long long n = 1; n <= opt.n_max; ++n) {
                        const auto& terms = tables.terms[static_cast<std::size_t>(n)];
                        const auto& fl = tables.factors[static_cast<std::size_t>(n)];
                        if (exact) {
                            long long lhs[kMaxH + 1] = {0, 0, 0, 0};
                            for (const auto& t : terms) {
                                int s = t.mu *
                                        psi.ival[static_cast<std::size_t>(t.q % psi.modulus)] *
                                        phi.ival[static_cast<std::size_t>(t.m % phi.modulus)];
                                if (s == 0) continue;
                                long long m = t.m;
                                long long acc = s;
                                for (unsigned h = 0; h <= opt.h_max; ++h) {
                                    lhs[h] += acc;
                                    acc *= m;
                                }
                            }
                            closed_real_all(fl, n, opt.h_max, psi, phi, rhs_i.data());
                            cform_real_all(fl, n, opt.h_max, psi, phi, cf_i.data());
                            for (unsigned h = 0; h <= opt.h_max; ++h) {
                                ++res.checks;
                                ++res.cform_checks;
                                if (static_cast<__int128>(lhs[h]) * rhs_i[h].den !=
                                    rhs_i[h].num) {
                                    ++res.mismatches;
                                    report("exact", h, n);
                                }
                                if (static_cast<__int128>(lhs[h]) * cf_i[h].den != cf_i[h].num) {
                                    ++res.cform_mismatches;
                                    report("exact-cform", h, n);
                                }
                            }
                        } else {
                            std::complex<double> lhs[kMaxH + 1] = {};
                            for (const auto& t : terms) {
                                auto v = psi.cval[static_cast<std::size_t>(t.q % psi.modulus)] *
                                         phi.cval[static_cast<std::size_t>(t.m % phi.modulus)];
                                if (v.real() == 0.0 && v.imag() == 0.0) continue;
                                if (t.mu < 0) v = -v;
                                double m = t.m;
                                double acc = 1.0;
                                for (unsigned h = 0; h <= opt.h_max; ++h) {
                                    lhs[h] += v * acc;
                                    acc *= m;
                                }
                            }
                            closed_complex_all(fl, n, opt.h_max, psi, phi, rhs_c.data());
                            if (psi.real) cform_complex_all(fl, n, opt.h_max, psi, phi, cf_c.data());
                            double scale = opt.tol;
                            for (unsigned h = 0; h <= opt.h_max; ++h) {
                                ++res.checks;
                                if (std::abs(lhs[h] - rhs_c[h]) > scale) {
                                    ++res.mismatches;
                                    report("float", h, n);
                                }
                                if (psi.real) {
                                    ++res.cform_checks;
                                    if (std::abs(lhs[h] - cf_c[h]) > scale) {
                                        ++res.cform_mismatches;
                                        report("float-cform", h, n);
                                    }
                                }
                                scale *= static_cast<double>(n);
                            }
                        }
                    }
                }
            }
        }
    };

    unsigned nthreads = opt.threads > 0 ? static_cast<unsigned>(opt.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    TheoremSweepStats stats;
    for (const auto& r : results) {
        stats.pairs += r.pairs;
        stats.checks += r.checks;
        stats.mismatches += r.mismatches;
        stats.cform_checks += r.cform_checks;
        stats.cform_mismatches += r.cform_mismatches;
        for (const auto& f : r.failures)
            if (stats.failures.size() < 10) stats.failures.push_back(f);
    }
    return stats;
}

inline int env_thread_count() {
    if (const char* env = std::getenv("PRIMREP_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 0;
}

}  // namespace primrep
