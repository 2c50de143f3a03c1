// Acceptance suite: one line per criterion, exact tolerances pinned in code.
// Exit status 0 only when every criterion passes.

#include "primrep/primrep.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <random>

using namespace primrep;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int criterion, const char* what, bool pass, const std::string& detail,
            double seconds) {
    printf("%s criterion %d: %s (%s, %.1fs)\n", pass ? "PASS" : "FAIL", criterion, what,
           detail.c_str(), seconds);
    fflush(stdout);
    if (!pass) ++failures;
}

int sweep_threads() {
    int t = env_thread_count();
    return t > 0 ? t : 0;
}

// --- criterion 1: Jacobi formula vs series oracle up to 10^4, exact, <30s ---
void criterion1() {
    Timer timer;
    const long long B = 10000;
    const auto* jac = find_catalog_entry("jacobi");
    auto series = rep_series(jac->form, B);
    long long first_bad = -1;
    for (long long n = 1; n <= B && first_bad < 0; ++n) {
        if (evaluate_formula(*jac->spec, n) !=
            Rational(series.counts[static_cast<std::size_t>(n)]))
            first_bad = n;
    }
    // the two oracles also agree with each other on this form
    auto enumerated = count_all_by_enumeration(jac->form, 2000);
    for (long long n = 0; n <= 2000 && first_bad < 0; ++n)
        if (Rational(enumerated[static_cast<std::size_t>(n)]) !=
            Rational(series.counts[static_cast<std::size_t>(n)]))
            first_bad = n;
    double secs = timer.seconds();
    bool pass = first_bad < 0 && secs < 30.0;
    report(1, "Jacobi four-squares formula equals the series oracle to 10^4", pass,
           first_bad < 0 ? "exact for all n <= 10000" : "first mismatch n=" + std::to_string(first_bad),
           secs);
}

// --- criterion 2: primitive four squares three ways up to 10^4 ---
void criterion2() {
    Timer timer;
    const long long B = 10000;
    const auto* jac = find_catalog_entry("jacobi");
    auto [all, prim] = count_all_and_primitive(jac->form, B);
    long long first_bad = -1;
    bool mult8_ok = true;
    for (long long n = 1; n <= B && first_bad < 0; ++n) {
        Rational closed = jac->primitive.evaluate(factorize(n));
        Rational eis = primitive_eisenstein_part(*jac->spec, n);
        Rational counted = Rational(prim[static_cast<std::size_t>(n)]);
        if (closed != counted || eis != counted) first_bad = n;
        if (n % 8 == 0 && counted != 0) mult8_ok = false;
    }
    bool pass = first_bad < 0 && mult8_ok;
    report(2, "primitive four squares: closed form = lattice count = termwise transform", pass,
           first_bad < 0 ? (mult8_ok ? "exact to 10^4, r^p(8m) = 0 throughout"
                                     : "a multiple of 8 has a primitive representation")
                         : "first mismatch n=" + std::to_string(first_bad),
           timer.seconds());
}

// --- criterion 3: six squares, formula and d(n)-primitive form to 5000 ---
void criterion3() {
    Timer timer;
    const long long B = 5000;
    const auto* six = find_catalog_entry("six_squares");
    auto series = rep_series(six->form, B);
    auto [all, prim] = count_all_and_primitive(six->form, B);
    long long first_bad = -1;
    for (long long n = 1; n <= B && first_bad < 0; ++n) {
        auto c = series.counts[static_cast<std::size_t>(n)];
        if (Rational(c) != Rational(all[static_cast<std::size_t>(n)])) first_bad = n;
        else if (evaluate_formula(*six->spec, n) != Rational(c)) first_bad = n;
        else {
            Rational product = Rational(n) * n;
            for (const auto& [p, e] : factorize(n).factors)
                product *= Rational(p * p + kronecker_symbol(Int(-4), p), p * p);
            long long d;
            switch (n % 8) {
                case 1: case 5: d = 12; break;
                case 3: case 7: d = 20; break;
                case 6: d = 17; break;
                default: d = 15; break;
            }
            if (Rational(d) * product != Rational(prim[static_cast<std::size_t>(n)])) first_bad = n;
            else if (six->primitive.evaluate(factorize(n)) !=
                     Rational(prim[static_cast<std::size_t>(n)]))
                first_bad = n;
        }
    }
    report(3, "six squares: formula and d(n)-primitive form exact to 5000", first_bad < 0,
           first_bad < 0 ? "exact, d(n) in {12,20,15,17} by residue class"
                         : "first mismatch n=" + std::to_string(first_bad),
           timer.seconds());
}

// --- criterion 4: the sixteen appendix pairs against both oracles to 2000 ---
void criterion4() {
    Timer timer;
    const long long B = 2000;
    long long bad_entries = 0;
    std::string detail;
    for (const auto& entry : builtin_catalog()) {
        if (entry.label == "jacobi" || entry.label == "six_squares") continue;
        auto series = rep_series(entry.form, B);
        auto [all, prim] = count_all_and_primitive(entry.form, B);
        auto at = [&](long long m) { return series.counts[static_cast<std::size_t>(m)]; };
        long long first_bad = -1;
        for (long long n = 1; n <= B && first_bad < 0; ++n) {
            auto fn = factorize(n);
            Rational enumerated = Rational(all[static_cast<std::size_t>(n)]);
            Rational convolved = Rational(at(n));
            Rational prim_count = Rational(prim[static_cast<std::size_t>(n)]);
            if (enumerated != convolved) first_bad = n;
            else if (entry.r_closed(fn) != enumerated) first_bad = n;
            else if (entry.primitive.evaluate(fn) != prim_count) first_bad = n;
            else if (Rational(primitive_from_rep(at, n)) != prim_count) first_bad = n;
            else if (entry.spec && primitive_eisenstein_part(*entry.spec, n) != prim_count)
                first_bad = n;
        }
        if (first_bad >= 0) {
            ++bad_entries;
            if (!detail.empty()) detail += "; ";
            detail += entry.label + " first mismatch n=" + std::to_string(first_bad);
        }
    }
    // printed-variant probes: report, never silently patch
    auto probe10 = [&] {
        auto all10 = count_all_by_enumeration(DiagonalForm({1, 1, 3, 3}), 200);
        for (long long n = 1; n <= 200; ++n)
            if (catalog_appendix10_printed(n) != Rational(all10[static_cast<std::size_t>(n)]))
                return n;
        return -1LL;
    }();
    auto probe6 = [&] {
        auto [a6, p6] = count_all_and_primitive(DiagonalForm({1, 1, 1, 5}), 200);
        for (long long n = 1; n <= 200; ++n)
            if (catalog_appendix6_printed(n) != Rational(p6[static_cast<std::size_t>(n)])) return n;
        return -1LL;
    }();
    printf("  note: appendix (10) as printed (sigma(n/2) under delta_{3|n}) first fails at n=%lld;"
           " catalog stores the sigma(n/3) reading\n", probe10);
    printf("  note: appendix (6) prefactor as printed (+delta_{8|n}) first fails at n=%lld;"
           " catalog stores the +delta_{8|n}/2 reading\n", probe6);
    double secs = timer.seconds();
    bool pass = bad_entries == 0 && probe10 == 3 && probe6 == 8 && secs < 300.0;
    report(4, "sixteen appendix pairs (r and r^p) vs both oracles to 2000", pass,
           bad_entries == 0 ? "exact; printed-variant discrepancies reported above" : detail,
           secs);
}

// --- criteria 5 and 6: the closed forms over all moduli up to 36 ---
TheoremSweepStats sweep_stats;

void criterion5() {
    Timer timer;
    TheoremSweepOptions opt;
    opt.modulus_bound = 36;
    opt.n_max = 3000;
    opt.h_max = 3;
    opt.tol = 1e-9;
    opt.threads = sweep_threads();
    sweep_stats = run_theorem_sweep(opt);

    // anchor the optimized sweep paths to the literal library routines on a
    // deterministic sample
    std::mt19937_64 rng(777);
    long long anchor_bad = 0;
    for (int i = 0; i < 60; ++i) {
        long long N = 1 + static_cast<long long>(rng() % 36);
        long long M = 1 + static_cast<long long>(rng() % 36);
        auto psis = enumerate_characters_mod(N);
        auto phis = enumerate_characters_mod(M);
        const auto& psi = psis[rng() % psis.size()];
        const auto& phi = phis[rng() % phis.size()];
        unsigned h = static_cast<unsigned>(rng() % 4);
        long long n = 1 + static_cast<long long>(rng() % 3000);
        auto brute = mobius_weighted_sum_bruteforce(psi, phi, h, n);
        auto closed = mobius_weighted_sum_closed(psi, phi, h, n);
        double tol = 1e-9 * std::pow(static_cast<double>(n), h);
        if (!brute.close_to(closed, tol)) ++anchor_bad;
        if (psi.is_real() && phi.is_real() && !closed.exact_eq(brute)) ++anchor_bad;
    }

    bool pass = sweep_stats.mismatches == 0 && anchor_bad == 0;
    std::string detail = "pairs=" + std::to_string(sweep_stats.pairs) +
                         " closed-vs-brute checks=" + std::to_string(sweep_stats.checks) +
                         " mismatches=" + std::to_string(sweep_stats.mismatches) +
                         " library-anchor misses=" + std::to_string(anchor_bad);
    for (const auto& f : sweep_stats.failures) detail += "; " + f;
    report(5, "Thm 1.2 (1): double sum = closed form, all pairs N,M <= 36, h <= 3, n <= 3000",
           pass, detail, timer.seconds());
}

void criterion6() {
    Timer timer;
    // the c(n) specialization was checked against the same sweep data for
    // every real psi (exactly on real pairs, within 1e-9 n^h otherwise);
    // additionally pin the exact three-way agreement on a library sample
    std::mt19937_64 rng(778);
    long long bad = 0;
    auto reals = enumerate_real_characters(36);
    for (int i = 0; i < 40; ++i) {
        const auto& psi = reals[rng() % reals.size()];
        const auto& phi = reals[rng() % reals.size()];
        unsigned h = static_cast<unsigned>(rng() % 4);
        long long n = 1 + static_cast<long long>(rng() % 3000);
        auto brute = mobius_weighted_sum_bruteforce(psi, phi, h, n);
        auto cform = mobius_weighted_sum_real(psi, phi, h, n);
        auto closed = mobius_weighted_sum_closed(psi, phi, h, n);
        if (!cform.exact_eq(brute) || !cform.exact_eq(closed)) ++bad;
    }
    bool pass = sweep_stats.cform_mismatches == 0 && sweep_stats.cform_checks > 0 && bad == 0;
    report(6, "Thm 1.2 (2): real-psi specialization over the same range", pass,
           "cform checks=" + std::to_string(sweep_stats.cform_checks) +
               " mismatches=" + std::to_string(sweep_stats.cform_mismatches) +
               " exact-sample misses=" + std::to_string(bad),
           timer.seconds());
}

// --- criterion 7: Mobius round trip and inclusion-exclusion oracle ---
void criterion7() {
    Timer timer;
    std::mt19937_64 rng(314159);
    const long long B = 500;
    long long bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::map<long long, long long> f;
        for (long long n = 1; n <= B; ++n)
            f[n] = static_cast<long long>(rng() % 20001) - 10000;
        auto ff = [&](long long n) { return f.at(n); };
        auto prim = [&](long long n) { return primitive_from_rep(ff, n); };
        auto rep = [&](long long n) { return rep_from_primitive(ff, n); };
        for (long long n = 1; n <= B; ++n) {
            if (rep_from_primitive(prim, n) != f[n]) ++bad;
            if (primitive_from_rep(rep, n) != f[n]) ++bad;
        }
    }
    long long ie_bad = 0;
    for (const auto& entry : builtin_catalog()) {
        auto series = rep_series(entry.form, 2000);
        auto at = [&](long long m) { return series.counts[static_cast<std::size_t>(m)]; };
        for (long long n = 1; n <= 2000; ++n) {
            if (primitive_by_inclusion_exclusion(at, factorize(n)) != primitive_from_rep(at, n))
                ++ie_bad;
        }
    }
    bool pass = bad == 0 && ie_bad == 0;
    report(7, "Thm 1.1: transforms mutually inverse; inclusion-exclusion oracle agrees", pass,
           "100 random functions on [1,500], 18 catalog forms to 2000; misses=" +
               std::to_string(bad + ie_bad),
           timer.seconds());
}

// --- criterion 8: fit recovery ---
void criterion8() {
    Timer timer;
    bool pass = true;
    std::string detail;

    {
        DiagonalForm four({1, 1, 1, 1});
        auto series = rep_series(four, 200);
        auto res = fit(series, 4, 2, {1, 10}, {11, 200});
        const auto* jac = find_catalog_entry("jacobi");
        bool ok = res.residual_ok && res.coefficients.size() == 2 &&
                  res.coefficients[1].second == 8 && res.coefficients[0].second == 0;
        if (ok) {
            auto spec = fit_result_to_spec(res, "fit", four);
            for (long long n = 1; n <= 200 && ok; ++n)
                ok = evaluate_formula(spec, n) == evaluate_formula(*jac->spec, n);
        }
        if (!ok) {
            pass = false;
            detail += "four-squares fit failed; ";
        }
    }
    {
        DiagonalForm six({1, 1, 1, 1, 1, 1});
        auto series = rep_series(six, 200);
        auto res = fit(series, 4, 3, {1, 10}, {11, 200});
        bool ok = res.residual_ok && res.coefficients.size() == 2 &&
                  res.coefficients[0].second == -4 && res.coefficients[1].second == 16;
        if (!ok) {
            pass = false;
            detail += "six-squares fit failed; ";
        }
    }
    std::mt19937_64 rng(271828);
    int roundtrip_bad = 0;
    for (int trial = 0; trial < 50; ++trial) {
        long long levels[] = {8, 12, 16, 20, 24};
        long long N = levels[rng() % 5];
        int k = 2 + static_cast<int>(rng() % 3);
        auto triples = enumerate_triples(N, k, true);
        if (triples.empty()) continue;
        std::vector<Rational> coeffs;
        for (std::size_t i = 0; i < triples.size(); ++i)
            coeffs.emplace_back(static_cast<long long>(rng() % 61) - 30,
                                1 + static_cast<long long>(rng() % 9));
        const long long B = static_cast<long long>(triples.size()) + 30;
        auto target = [&](long long n) {
            Rational v = 0;
            for (std::size_t i = 0; i < triples.size(); ++i)
                v += coeffs[i] * basis_coefficient(triples[i], n).as_rational();
            return v;
        };
        auto res = fit_targets(target, N, k, {1, B}, {1, B});
        if (!res.residual_ok || !res.kernel.empty()) {
            ++roundtrip_bad;
            continue;
        }
        for (std::size_t i = 0; i < triples.size(); ++i)
            if (res.coefficients[i].second != coeffs[i]) ++roundtrip_bad;
    }
    if (roundtrip_bad > 0) {
        pass = false;
        detail += "synthetic round trips missed " + std::to_string(roundtrip_bad) + "; ";
    }
    // every catalog form refits at its implied level and revalidates to 2000
    int refit_bad = 0;
    for (const auto& entry : builtin_catalog()) {
        long long N = infer_level(entry.form);
        int k = static_cast<int>(entry.form.rank() / 2);
        auto triples = enumerate_triples(N, k, true);
        long long t = std::max<long long>(10, static_cast<long long>(triples.size()));
        auto series = rep_series(entry.form, 2000);
        bool ok = true;
        try {
            auto res = fit(series, N, k, {1, t}, {t + 1, 2000});
            ok = res.residual_ok;
            if (ok) {
                auto spec = fit_result_to_spec(res, "refit", entry.form);
                for (long long n = 1; n <= 2000 && ok; ++n)
                    ok = evaluate_formula(spec, n) == entry.r_closed(factorize(n));
            }
        } catch (const FitError&) {
            ok = false;
        }
        if (!ok) {
            ++refit_bad;
            detail += entry.label + " refit failed; ";
        }
    }
    if (refit_bad > 0) pass = false;
    if (pass)
        detail = "Jacobi and six-squares structures recovered; 50 round trips exact; "
                 "18 catalog refits validate to 2000";
    report(8, "eisenfit recovery from theta coefficients and synthetic targets", pass, detail,
           timer.seconds());
}

}  // namespace

int main() {
    Timer total;
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    printf("%d criteria failed, total %.1fs\n", failures, total.seconds());
    return failures == 0 ? 0 : 1;
}
