#pragma once

#include "primrep/catalog.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace primrep {

// Basis element of the weight-k Eisenstein space at level N: primitive psi
// and phi with parity(psi) parity(phi) = (-1)^k and t cond(psi) cond(phi) | N.
struct BasisTriple {
    DirichletCharacter psi;
    DirichletCharacter phi;
    long long t = 1;
    int weight = 2;

    bool is_trivial_pair() const { return psi.conductor() == 1 && phi.conductor() == 1; }
};

struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::vector<BasisTriple> enumerate_triples(long long N, int k, bool real_only) {
    if (N < 1) throw std::invalid_argument("level must be positive");
    if (k < 2) throw std::invalid_argument("weight must be >= 2");
    std::vector<DirichletCharacter> primitives;
    if (real_only) {
        primitives = enumerate_real_characters(N);
    } else {
        for (long long u = 1; u <= N; ++u) {
            if (N % u != 0) continue;
            for (const auto& chi : enumerate_characters_mod(u))
                if (chi.is_primitive()) primitives.push_back(chi);
        }
    }
    int want_parity = (k % 2 == 0) ? 1 : -1;
    std::vector<BasisTriple> out;
    for (const auto& psi : primitives) {
        long long u = psi.conductor();
        if (u > N || N % u != 0) continue;
        for (const auto& phi : primitives) {
            long long v = phi.conductor();
            if (u * v > N || N % (u * v) != 0) continue;
            if (psi.parity() * phi.parity() != want_parity) continue;
            for (long long t = 1; t * u * v <= N; ++t) {
                if (N % (t * u * v) != 0) continue;
                if (k == 2 && t * u * v == 1) continue;  // (1,1,1) excluded in weight 2
                out.push_back(BasisTriple{psi, phi, t, k});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const BasisTriple& a, const BasisTriple& b) {
        auto key = [](const BasisTriple& x) {
            return std::tuple(x.psi.conductor(), x.psi.syntax(), x.phi.conductor(),
                              x.phi.syntax(), x.t);
        };
        return key(a) < key(b);
    });
    return out;
}

// q^n coefficient of the basis element, up to the uniform factor 2 absorbed
// into the fitted weights: delta_{t|n} sigma_{k-1}^{psi,phi}(n/t), or
// sigma(n) - t delta_{t|n} sigma(n/t) for the weight-2 trivial pair.
inline ExactScalar basis_coefficient(const BasisTriple& triple, long long n) {
    if (n < 1) throw std::domain_error("n must be >= 1");
    unsigned h = static_cast<unsigned>(triple.weight - 1);
    const auto one = DirichletCharacter::trivial();
    if (triple.weight == 2 && triple.is_trivial_pair()) {
        ExactScalar s = sigma_twisted(one, one, 1, n);
        if (n % triple.t == 0) {
            ExactScalar dilated = sigma_twisted(one, one, 1, n / triple.t);
            s = s - dilated.scale(Rational(triple.t));
        }
        return s;
    }
    if (n % triple.t != 0) return ExactScalar::zero();
    return sigma_twisted(triple.psi, triple.phi, h, n / triple.t);
}

struct FitResult {
    std::vector<std::pair<BasisTriple, Rational>> coefficients;
    bool residual_ok = false;
    std::pair<long long, long long> validated_range{0, 0};
    // nonempty when even train + validate leave directions unpinned; the
    // solution set is then coefficients + span(kernel)
    std::vector<std::vector<Rational>> kernel;
};

namespace fit_detail {

// Reduced row echelon form over exact rationals. Returns false when the
// system A x = b is inconsistent.
struct Echelon {
    std::vector<std::vector<Rational>> rows;  // augmented [A|b]
    std::vector<std::size_t> pivot_cols;
    std::size_t cols = 0;                     // unknowns (excluding the RHS)

    bool reduce() {
        std::size_t r = 0;
        pivot_cols.clear();
        for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
            std::size_t sel = r;
            while (sel < rows.size() && rows[sel][c] == 0) ++sel;
            if (sel == rows.size()) continue;
            std::swap(rows[r], rows[sel]);
            Rational inv = rows[r][c];
            for (auto& x : rows[r]) x /= inv;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == r || rows[i][c] == 0) continue;
                Rational f = rows[i][c];
                for (std::size_t j = c; j <= cols; ++j) rows[i][j] -= f * rows[r][j];
            }
            pivot_cols.push_back(c);
            ++r;
        }
        for (std::size_t i = r; i < rows.size(); ++i)
            if (rows[i][cols] != 0) return false;
        return true;
    }

    std::vector<Rational> particular_solution() const {
        std::vector<Rational> x(cols, 0);
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) x[pivot_cols[i]] = rows[i][cols];
        return x;
    }

    std::vector<std::vector<Rational>> kernel_basis() const {
        std::vector<bool> is_pivot(cols, false);
        for (auto c : pivot_cols) is_pivot[c] = true;
        std::vector<std::vector<Rational>> basis;
        for (std::size_t f = 0; f < cols; ++f) {
            if (is_pivot[f]) continue;
            std::vector<Rational> v(cols, 0);
            v[f] = 1;
            for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -rows[i][f];
            basis.push_back(std::move(v));
        }
        return basis;
    }
};

}  // namespace fit_detail

// Solves sum_i c_i basis_coefficient(triple_i, n) = target(n) exactly on the
// training range, then validates. An inconsistent training system signals a
// nonzero cusp part (or a wrong level) and throws FitError. When training
// leaves free directions, the validation rows pin them; any direction still
// free afterwards is reported through FitResult::kernel.
template <class TargetFn>
FitResult fit_targets(TargetFn&& target, long long N, int k,
                      std::pair<long long, long long> train,
                      std::pair<long long, long long> validate) {
    if (k < 2) throw FitError("weight must be >= 2 (even rank of at least 4)");
    auto triples = enumerate_triples(N, k, /*real_only=*/true);
    if (triples.empty()) throw FitError("empty Eisenstein basis at level " + std::to_string(N));
    if (train.second < train.first || validate.second < validate.first)
        throw FitError("empty range");
    auto train_len = static_cast<std::size_t>(train.second - train.first + 1);
    if (train_len < triples.size())
        throw FitError("training range shorter than the basis (" +
                       std::to_string(triples.size()) + " triples)");

    auto build_row = [&](long long n) {
        std::vector<Rational> row;
        row.reserve(triples.size() + 1);
        for (const auto& tr : triples) row.push_back(basis_coefficient(tr, n).as_rational());
        row.push_back(Rational(target(n)));
        return row;
    };

    fit_detail::Echelon train_sys;
    train_sys.cols = triples.size();
    for (long long n = train.first; n <= train.second; ++n) train_sys.rows.push_back(build_row(n));
    if (!train_sys.reduce())
        throw FitError("no exact solution on the training range "
                       "(nonzero cusp part or wrong level)");

    FitResult result;
    result.validated_range = validate;

    auto train_kernel = train_sys.kernel_basis();
    std::vector<Rational> solution = train_sys.particular_solution();
    if (train_kernel.empty()) {
        // unique solution: check it on the validation range
        result.residual_ok = true;
        for (long long n = validate.first; n <= validate.second && result.residual_ok; ++n) {
            Rational lhs = 0;
            for (std::size_t j = 0; j < triples.size(); ++j)
                lhs += solution[j] * basis_coefficient(triples[j], n).as_rational();
            if (lhs != Rational(target(n))) result.residual_ok = false;
        }
    } else {
        // underdetermined: bring the validation rows in to pin the frees
        fit_detail::Echelon full = train_sys;
        for (long long n = validate.first; n <= validate.second; ++n)
            full.rows.push_back(build_row(n));
        if (full.reduce()) {
            solution = full.particular_solution();
            result.kernel = full.kernel_basis();
            result.residual_ok = true;
        } else {
            result.residual_ok = false;  // training fits, validation does not
        }
    }
    for (std::size_t j = 0; j < triples.size(); ++j)
        result.coefficients.emplace_back(triples[j], solution[j]);
    return result;
}

inline FitResult fit(const RepSeries& target, long long N, int k,
                     std::pair<long long, long long> train,
                     std::pair<long long, long long> validate) {
    if (validate.second > target.bound || train.second > target.bound)
        throw FitError("range exceeds the target series bound");
    return fit_targets([&](long long n) { return target.counts[static_cast<std::size_t>(n)]; },
                       N, k, train, validate);
}

// Default candidate level for a diagonal form; a heuristic upper-layer
// convenience, overridable by the caller.
inline long long infer_level(const DiagonalForm& form) {
    long long l = 1;
    for (long long a : form.coefficients) l = std::lcm(l, a);
    return 4 * l;
}

// A successful fit serializes straight into the FormulaSpec shape so catalog
// machinery can re-verify it. The weight-2 trivial-pair triple expands into
// its two dilated terms.
inline FormulaSpec fit_result_to_spec(const FitResult& fit, const std::string& label,
                                      std::optional<DiagonalForm> form) {
    std::vector<FormulaTerm> terms;
    unsigned h = 0;
    for (const auto& [triple, coeff] : fit.coefficients) {
        h = static_cast<unsigned>(triple.weight - 1);
        if (coeff == 0) continue;
        if (triple.weight == 2 && triple.is_trivial_pair()) {
            const auto one = DirichletCharacter::trivial();
            terms.push_back(FormulaTerm{coeff, one, one, 1, 1});
            terms.push_back(FormulaTerm{-coeff * Rational(triple.t), one, one, 1, triple.t});
        } else {
            terms.push_back(FormulaTerm{coeff, triple.psi, triple.phi, h, triple.t});
        }
    }
    if (terms.empty()) {
        const auto one = DirichletCharacter::trivial();
        terms.push_back(FormulaTerm{Rational(0), one, one, h, 1});
    }
    return make_formula_spec(label, h, std::move(form), std::move(terms));
}

}  // namespace primrep
