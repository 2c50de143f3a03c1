#include "primrep/characters.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace primrep;

namespace {

// independent oracle: Legendre symbol by Euler's criterion, extended to odd
// positive n by multiplicativity over the factorization
int legendre(long long a, long long p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    long long r = 1, base = a, e = (p - 1) / 2;
    while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return r == 1 ? 1 : (r == p - 1 ? -1 : 0);
}

int jacobi_oracle(long long a, long long n) {  // n odd positive
    int result = 1;
    for (long long p = 3; n > 1; p += 2) {
        while (n % p == 0) {
            n /= p;
            result *= legendre(a, p);
        }
        if (p * p > n && n > 1) {
            result *= legendre(a, n);
            break;
        }
    }
    return result;
}

std::vector<DirichletCharacter> test_pool() {
    std::vector<DirichletCharacter> pool = enumerate_real_characters(12);
    for (long long N : {5, 7, 8, 9, 16}) {
        auto all = enumerate_characters_mod(N);
        pool.insert(pool.end(), all.begin(), all.end());
    }
    return pool;
}

}  // namespace

TEST_CASE("kronecker examples") {
    CHECK(kronecker_symbol(-4LL, 3LL) == -1);
    CHECK(kronecker_symbol(8LL, 7LL) == 1);
    for (long long D = -30; D <= 30; ++D) CHECK(kronecker_symbol(D, 1LL) == 1);
    CHECK(kronecker_symbol(1LL, 0LL) == 1);
    CHECK(kronecker_symbol(-1LL, 0LL) == 1);
    CHECK(kronecker_symbol(5LL, 0LL) == 0);
    CHECK(kronecker_symbol(-1LL, -1LL) == -1);
    CHECK(kronecker_symbol(3LL, -1LL) == 1);
    // (a|2) by a mod 8
    CHECK(kronecker_symbol(7LL, 2LL) == 1);
    CHECK(kronecker_symbol(3LL, 2LL) == -1);
    CHECK(kronecker_symbol(6LL, 2LL) == 0);
}

TEST_CASE("kronecker matches the Euler-criterion oracle on odd n") {
    for (long long a = -40; a <= 40; ++a)
        for (long long n = 1; n <= 99; n += 2)
            CHECK(kronecker_symbol(a, n) == jacobi_oracle(a, n));
}

TEST_CASE("kronecker is multiplicative in the bottom argument") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 300; ++i) {
        long long a = static_cast<long long>(rng() % 61) - 30;
        long long m = static_cast<long long>(rng() % 60) - 30;
        long long n = static_cast<long long>(rng() % 60) - 30;
        if (m == 0 || n == 0) continue;
        CHECK(kronecker_symbol(a, m * n) == kronecker_symbol(a, m) * kronecker_symbol(a, n));
    }
}

TEST_CASE("fundamental discriminants") {
    for (long long D : {1, -3, -4, 5, 8, -8, 12, 13, -20, 24, -24, 28})
        CHECK(is_fundamental_discriminant(D));
    for (long long D : {0, 2, 3, -5, 9, -9, 16, 25, 48, -12, 100})
        CHECK_FALSE(is_fundamental_discriminant(D));
    CHECK_THROWS_AS(DirichletCharacter::kronecker(9), std::invalid_argument);
    CHECK_THROWS_AS(DirichletCharacter::kronecker(-12), std::invalid_argument);
}

TEST_CASE("evaluate on knowns") {
    auto km4 = DirichletCharacter::kronecker(-4);
    CHECK(km4.evaluate(2).is_zero());
    CHECK(km4.evaluate(5).as_rational() == 1);
    CHECK(km4.evaluate(3).as_rational() == -1);
    auto one = DirichletCharacter::trivial();
    for (long long m = -5; m <= 5; ++m) CHECK(one.evaluate(m).as_rational() == 1);
}

TEST_CASE("parity and is_real") {
    CHECK(DirichletCharacter::kronecker(-4).parity() == -1);
    CHECK(DirichletCharacter::kronecker(8).parity() == 1);
    CHECK(DirichletCharacter::kronecker(-8).parity() == -1);
    CHECK(DirichletCharacter::trivial().parity() == 1);
    CHECK(DirichletCharacter::kronecker(-3).is_real());
    // mod 5: exponents 0..3 on a generator of order 4; exponent 2 is the real one
    auto mod5 = enumerate_characters_mod(5);
    int reals = 0;
    for (const auto& chi : mod5) reals += chi.is_real() ? 1 : 0;
    CHECK(reals == 2);  // principal and the Legendre symbol
}

TEST_CASE("conjugation") {
    auto km4 = DirichletCharacter::kronecker(-4);
    CHECK(km4.conjugate() == km4);
    for (const auto& chi : enumerate_characters_mod(7)) {
        auto conj = chi.conjugate();
        CHECK(conj.conjugate() == chi);
        for (long long m = 0; m < 7; ++m)
            CHECK(conj.evaluate(m).exact_eq(chi.evaluate(m).conjugate()));
    }
}

TEST_CASE("complete multiplicativity, periodicity, vanishing") {
    std::mt19937_64 rng(2024);
    for (const auto& chi : test_pool()) {
        long long N = chi.modulus();
        for (int i = 0; i < 40; ++i) {
            long long a = 1 + static_cast<long long>(rng() % 10000);
            long long b = 1 + static_cast<long long>(rng() % 10000);
            CHECK(chi.evaluate(a * b).exact_eq(chi.evaluate(a) * chi.evaluate(b)));
        }
        for (long long m = 0; m < std::min<long long>(N, 30); ++m) {
            CHECK(chi.evaluate(m + N).exact_eq(chi.evaluate(m)));
            CHECK(chi.evaluate(m).is_zero() == (gcd_ll(m, N) > 1));
        }
    }
}

TEST_CASE("orthogonality: nontrivial characters sum to zero over residues") {
    for (long long N : {3, 4, 5, 7, 8, 9, 12, 16, 15}) {
        for (const auto& chi : enumerate_characters_mod(N)) {
            ExactScalar sum = ExactScalar::zero();
            for (long long m = 0; m < N; ++m) sum = sum + chi.evaluate(m);
            bool principal = chi.conductor() == 1;
            if (principal) {
                CHECK(sum.as_rational() > 0);
            } else if (sum.is_exact()) {
                CHECK(sum.exact_eq(ExactScalar::zero()));
            } else {
                CHECK(std::abs(sum.to_complex()) < 1e-9);
            }
        }
    }
}

TEST_CASE("real character squares to one on units") {
    for (const auto& chi : test_pool()) {
        if (!chi.is_real()) continue;
        for (long long m = 1; m <= 2 * chi.modulus() + 3; ++m) {
            if (gcd_ll(m, chi.modulus()) != 1) continue;
            CHECK((chi.evaluate(m) * chi.evaluate(m)).as_rational() == 1);
        }
    }
}

TEST_CASE("enumerate_real_characters") {
    auto bound1 = enumerate_real_characters(1);
    REQUIRE(bound1.size() == 1);
    CHECK(bound1[0].modulus() == 1);

    auto bound4 = enumerate_real_characters(4);
    std::vector<long long> discs;
    for (const auto& chi : bound4) discs.push_back(chi.discriminant());
    CHECK(discs == std::vector<long long>{1, -3, -4});

    auto bound8 = enumerate_real_characters(8);
    discs.clear();
    for (const auto& chi : bound8) discs.push_back(chi.discriminant());
    CHECK(discs == std::vector<long long>{1, -3, -4, 5, -7, 8, -8});
}

TEST_CASE("conductors and primitivity") {
    CHECK(DirichletCharacter::principal(12).conductor() == 1);
    CHECK(DirichletCharacter::kronecker(-4).is_primitive());
    // characters mod 6 are induced from conductors 1 and 3
    std::vector<long long> conds;
    for (const auto& chi : enumerate_characters_mod(6)) conds.push_back(chi.conductor());
    std::sort(conds.begin(), conds.end());
    CHECK(conds == std::vector<long long>{1, 3});
    // mod 8: conductors 1, 4, 8, 8
    conds.clear();
    for (const auto& chi : enumerate_characters_mod(8)) conds.push_back(chi.conductor());
    std::sort(conds.begin(), conds.end());
    CHECK(conds == std::vector<long long>{1, 4, 8, 8});
    // mod 9: phi(9) = 6 characters, conductors 1, 3, 9, 9, 9, 9
    conds.clear();
    for (const auto& chi : enumerate_characters_mod(9)) conds.push_back(chi.conductor());
    std::sort(conds.begin(), conds.end());
    CHECK(conds == std::vector<long long>{1, 3, 9, 9, 9, 9});
}

TEST_CASE("general character agrees with Kronecker at shared modulus") {
    // the nontrivial character mod 4 is chi_-4
    auto km4 = DirichletCharacter::kronecker(-4);
    auto gen = DirichletCharacter::general(4, {1});
    for (long long m = 0; m < 8; ++m) CHECK(gen.evaluate(m).exact_eq(km4.evaluate(m)));
    // mod 8 real primitives: exponents (1,0) -> chi_-8 or chi_8, (1,1)/(0,1) likewise
    auto k8 = DirichletCharacter::kronecker(8);
    auto km8 = DirichletCharacter::kronecker(-8);
    bool found8 = false, foundm8 = false;
    for (const auto& chi : enumerate_characters_mod(8)) {
        if (chi == k8) found8 = true;
        if (chi == km8) foundm8 = true;
    }
    CHECK(found8);
    CHECK(foundm8);
}

TEST_CASE("character count is phi(N)") {
    auto phi = [](long long n) {
        long long r = n;
        for (long long p = 2; p * p <= n; ++p)
            if (n % p == 0) {
                r -= r / p;
                while (n % p == 0) n /= p;
            }
        if (n > 1) r -= r / n;
        return r;
    };
    for (long long N = 1; N <= 40; ++N)
        CHECK(enumerate_characters_mod(N).size() == static_cast<std::size_t>(phi(N)));
}

TEST_CASE("syntax round trip and diagnostics") {
    for (const auto& chi : test_pool()) {
        auto back = DirichletCharacter::parse(chi.syntax());
        CHECK(back == chi);
    }
    CHECK(DirichletCharacter::parse("1").modulus() == 1);
    CHECK(DirichletCharacter::parse("kron:-4").discriminant() == -4);
    CHECK_THROWS_AS(DirichletCharacter::parse("kron:9"), std::invalid_argument);
    CHECK_THROWS_AS(DirichletCharacter::parse("mod:8:1"), std::invalid_argument);  // needs 2 slots
    CHECK_THROWS_AS(DirichletCharacter::parse("nonsense"), std::invalid_argument);
    CHECK_THROWS_AS(DirichletCharacter::parse("mod:abc:1"), std::invalid_argument);
}

TEST_CASE("scalar algebra basics") {
    auto i = ExactScalar::from_unit(RootOfUnity(1, 4));
    CHECK((i * i).as_rational() == -1);
    CHECK((i + i.conjugate()).exact_eq(ExactScalar::zero()));
    auto z3 = ExactScalar::from_unit(RootOfUnity(1, 3));
    CHECK((z3 * z3 * z3).as_rational() == 1);  // unit products stay exact
    auto sum = z3 + ExactScalar::one();        // leaves the exact regime
    CHECK_FALSE(sum.is_exact());
    CHECK(std::abs(sum.to_complex() - std::complex<double>(0.5, std::sqrt(3.0) / 2)) < 1e-12);
    CHECK(sum.error_bound() < 1e-12);
    CHECK(ExactScalar::from_rational(Rational(3, 2)).scale(Rational(2)).as_rational() == 3);
}
