#pragma once

#include "primrep/arith.hpp"
#include "primrep/scalar.hpp"

#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace primrep {

// Full Kronecker symbol (a|n), extended to all integer pairs:
// (a|0) = 1 iff a = +-1, (a|-1) = -1 iff a < 0, (a|2) by a mod 8.
inline int kronecker_symbol(Int a, Int n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    while (n % 2 == 0) {
        n /= 2;
        if (a % 2 == 0) return 0;
        long long a8 = static_cast<long long>(((a % 8) + 8) % 8);
        if (a8 == 3 || a8 == 5) result = -result;
    }
    // Jacobi stage: n odd and positive from here on.
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long long n8 = static_cast<long long>(n % 8);
            if (n8 == 3 || n8 == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

inline int kronecker_symbol(long long a, long long n) {
    return kronecker_symbol(Int(a), Int(n));
}

// D = 1, or D == 1 (mod 4) squarefree, or D = 4m with m == 2,3 (mod 4)
// squarefree: exactly the conductors of primitive real characters.
inline bool is_fundamental_discriminant(long long D) {
    if (D == 0) return false;
    auto squarefree = [](long long v) {
        auto f = factorize(Int(v < 0 ? -v : v));
        for (const auto& [p, e] : f.factors)
            if (e >= 2) return false;
        return true;
    };
    long long mod4 = ((D % 4) + 4) % 4;
    if (mod4 == 1) return squarefree(D);
    if (D % 4 != 0) return false;
    long long m = D / 4;
    long long m4 = ((m % 4) + 4) % 4;
    return (m4 == 2 || m4 == 3) && squarefree(m);
}

namespace detail {

inline long long powmod_ll(long long base, long long exp, long long mod) {
    long long r = 1 % mod;
    base %= mod;
    if (base < 0) base += mod;
    while (exp > 0) {
        if (exp & 1) r = static_cast<long long>(static_cast<__int128>(r) * base % mod);
        base = static_cast<long long>(static_cast<__int128>(base) * base % mod);
        exp >>= 1;
    }
    return r;
}

inline long long primitive_root_mod_prime(long long p) {
    if (p == 2) return 1;
    auto f = factorize(Int(p - 1));
    for (long long g = 2;; ++g) {
        bool ok = true;
        for (const auto& [q, e] : f.factors) {
            long long qq = static_cast<long long>(q);
            if (powmod_ll(g, (p - 1) / qq, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
}

// Smallest primitive root mod p^e for odd p (lifted from mod p when needed).
inline long long primitive_root_mod_prime_power(long long p, unsigned e) {
    long long g = primitive_root_mod_prime(p);
    if (e == 1) return g;
    if (powmod_ll(g, p - 1, p * p) == 1) g += p;
    return g;
}

}  // namespace detail

// A Dirichlet character mod N. Real characters are Kronecker symbols of a
// fundamental discriminant and evaluate without a table; general characters
// are exponent vectors on the canonical generators of (Z/N)* and carry a
// full value table (one root of unity or zero per residue).
class DirichletCharacter {
  public:
    enum class Kind { Real, General };

    struct Component {
        long long prime = 0;
        unsigned exp = 0;
        long long prime_power = 0;
        // generator data: odd p^e and 2^2 use (gen1, ord1) only; 2^e with
        // e >= 3 adds the 5-part (gen2, ord2)
        long long gen1 = 0;
        unsigned long ord1 = 1;
        unsigned long a1 = 0;
        long long gen2 = 0;
        unsigned long ord2 = 1;
        unsigned long a2 = 0;
    };

    static DirichletCharacter trivial() { return kronecker(1); }

    static DirichletCharacter kronecker(long long D) {
        if (!is_fundamental_discriminant(D))
            throw std::invalid_argument("discriminant " + std::to_string(D) +
                                        " is not fundamental");
        DirichletCharacter chi;
        chi.kind_ = Kind::Real;
        chi.discriminant_ = D;
        chi.modulus_ = D < 0 ? -D : D;
        chi.conductor_ = chi.modulus_;
        return chi;
    }

    // General character mod N from the exponent vector in the canonical
    // generator basis (ascending primes; the 2^e component with e >= 3
    // takes two exponents, on -1 then on 5).
    static DirichletCharacter general(long long N, const std::vector<unsigned long>& exponents) {
        if (N < 1) throw std::invalid_argument("modulus must be positive");
        DirichletCharacter chi;
        chi.kind_ = Kind::General;
        chi.modulus_ = N;
        chi.components_ = components_of(N);
        std::size_t want = 0;
        for (const auto& c : chi.components_) want += (c.gen2 != 0) ? 2 : 1;
        if (exponents.size() != want)
            throw std::invalid_argument("expected " + std::to_string(want) +
                                        " generator exponents for modulus " + std::to_string(N));
        std::size_t i = 0;
        for (auto& c : chi.components_) {
            c.a1 = exponents[i++] % c.ord1;
            if (c.gen2 != 0) c.a2 = exponents[i++] % c.ord2;
        }
        chi.build_table();
        chi.conductor_ = chi.compute_conductor();
        return chi;
    }

    static DirichletCharacter principal(long long N) {
        std::vector<unsigned long> zeros(exponent_slots(N), 0);
        return general(N, zeros);
    }

    long long modulus() const { return modulus_; }
    long long conductor() const { return conductor_; }
    Kind kind() const { return kind_; }
    long long discriminant() const {
        if (kind_ != Kind::Real) throw std::logic_error("not a Kronecker character");
        return discriminant_;
    }

    ExactScalar operator()(const Int& m) const { return evaluate(m); }

    ExactScalar evaluate(const Int& m) const {
        if (kind_ == Kind::Real) {
            int v = kronecker_symbol(Int(discriminant_), m);
            if (v == 0) return ExactScalar::zero();
            return ExactScalar::from_unit(RootOfUnity(v == 1 ? 0 : 1, 2));
        }
        long long r = static_cast<long long>(((m % modulus_) + modulus_) % modulus_);
        const auto& entry = table_[static_cast<std::size_t>(r)];
        if (!entry) return ExactScalar::zero();
        return ExactScalar::from_unit(*entry);
    }

    ExactScalar evaluate(long long m) const { return evaluate(Int(m)); }

    DirichletCharacter conjugate() const {
        if (kind_ == Kind::Real) return *this;
        std::vector<unsigned long> exps;
        for (const auto& c : components_) {
            exps.push_back(c.a1 == 0 ? 0 : c.ord1 - c.a1);
            if (c.gen2 != 0) exps.push_back(c.a2 == 0 ? 0 : c.ord2 - c.a2);
        }
        return general(modulus_, exps);
    }

    // chi(-1), always +1 or -1.
    int parity() const {
        ExactScalar v = evaluate(Int(-1));
        Rational r = v.as_rational();
        return r == 1 ? 1 : -1;
    }

    bool is_real() const {
        if (kind_ == Kind::Real) return true;
        for (const auto& c : components_) {
            if (c.a1 != 0 && 2 * c.a1 != c.ord1) return false;
            if (c.gen2 != 0 && c.a2 != 0 && 2 * c.a2 != c.ord2) return false;
        }
        return true;
    }

    // Largest order among the character's values; the exact-arithmetic
    // regime applies when this divides 4.
    unsigned long value_order() const {
        if (kind_ == Kind::Real) return discriminant_ == 1 ? 1 : 2;
        unsigned long o = 1;
        for (const auto& c : components_) {
            o = std::lcm(o, c.ord1 / std::gcd(c.a1 == 0 ? c.ord1 : c.a1, c.ord1));
            if (c.gen2 != 0)
                o = std::lcm(o, c.ord2 / std::gcd(c.a2 == 0 ? c.ord2 : c.a2, c.ord2));
        }
        return o;
    }

    bool is_primitive() const { return conductor_ == modulus_; }

    bool operator==(const DirichletCharacter& o) const {
        if (modulus_ != o.modulus_) return false;
        for (long long m = 0; m < modulus_; ++m)
            if (!evaluate(m).exact_eq(o.evaluate(m))) return false;
        return true;
    }

    // Textual syntax: "1", "kron:D", "mod:N:e1,e2,...".
    std::string syntax() const {
        if (kind_ == Kind::Real) {
            if (discriminant_ == 1) return "1";
            return "kron:" + std::to_string(discriminant_);
        }
        std::string s = "mod:" + std::to_string(modulus_) + ":";
        bool first = true;
        for (const auto& c : components_) {
            if (!first) s += ",";
            s += std::to_string(c.a1);
            first = false;
            if (c.gen2 != 0) s += "," + std::to_string(c.a2);
        }
        return s;
    }

    static DirichletCharacter parse(const std::string& text) {
        if (text == "1") return trivial();
        auto starts_with = [&](const char* p) { return text.rfind(p, 0) == 0; };
        try {
            if (starts_with("kron:")) {
                long long D = std::stoll(text.substr(5));
                return kronecker(D);
            }
            if (starts_with("mod:")) {
                auto rest = text.substr(4);
                auto colon = rest.find(':');
                if (colon == std::string::npos)
                    throw std::invalid_argument("missing exponent list");
                long long N = std::stoll(rest.substr(0, colon));
                std::vector<unsigned long> exps;
                std::stringstream ss(rest.substr(colon + 1));
                std::string item;
                while (std::getline(ss, item, ','))
                    exps.push_back(std::stoul(item));
                return general(N, exps);
            }
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed character syntax: \"" + text + "\"");
        }
        throw std::invalid_argument("unknown character syntax: \"" + text + "\"");
    }

    static std::size_t exponent_slots(long long N) {
        std::size_t n = 0;
        for (const auto& c : components_of(N)) n += (c.gen2 != 0) ? 2 : 1;
        return n;
    }

  private:
    DirichletCharacter() = default;

    static std::vector<Component> components_of(long long N) {
        std::vector<Component> comps;
        auto f = factorize(Int(N));
        for (const auto& [pI, e] : f.factors) {
            Component c;
            c.prime = static_cast<long long>(pI);
            c.exp = e;
            c.prime_power = ipow_ll(c.prime, e);
            if (c.prime == 2) {
                if (e == 1) {
                    c.gen1 = 1;
                    c.ord1 = 1;
                } else if (e == 2) {
                    c.gen1 = 3;
                    c.ord1 = 2;
                } else {
                    c.gen1 = c.prime_power - 1;  // -1
                    c.ord1 = 2;
                    c.gen2 = 5;
                    c.ord2 = static_cast<unsigned long>(c.prime_power / 4);
                }
            } else {
                c.gen1 = detail::primitive_root_mod_prime_power(c.prime, e);
                c.ord1 = static_cast<unsigned long>(c.prime_power / c.prime * (c.prime - 1));
            }
            comps.push_back(c);
        }
        return comps;
    }

    void build_table() {
        if (modulus_ > (1LL << 24))
            throw std::invalid_argument("general character modulus too large for table");
        table_.assign(static_cast<std::size_t>(modulus_), std::nullopt);
        // per-component discrete logs, then CRT-combined angles
        std::vector<std::vector<std::pair<unsigned long, unsigned long>>> dlog;
        for (const auto& c : components_) {
            std::vector<std::pair<unsigned long, unsigned long>> d(
                static_cast<std::size_t>(c.prime_power), {0, 0});
            long long outer = 1;
            unsigned long outer_ord = (c.gen2 != 0) ? 2 : 1;
            for (unsigned long s = 0; s < outer_ord; ++s) {
                long long v = outer;
                for (unsigned long j = 0; j < ((c.gen2 != 0) ? c.ord2 : c.ord1); ++j) {
                    d[static_cast<std::size_t>(v)] = (c.gen2 != 0) ? std::make_pair(s, j)
                                                                   : std::make_pair(j, 0ul);
                    v = v * ((c.gen2 != 0) ? c.gen2 : c.gen1) % c.prime_power;
                }
                if (c.gen2 != 0) outer = outer * c.gen1 % c.prime_power;
            }
            dlog.push_back(std::move(d));
        }
        for (long long m = 0; m < modulus_; ++m) {
            if (gcd_ll(m, modulus_) != 1) continue;
            RootOfUnity u(0, 1);
            for (std::size_t ci = 0; ci < components_.size(); ++ci) {
                const auto& c = components_[ci];
                long long r = m % c.prime_power;
                auto [x1, x2] = dlog[ci][static_cast<std::size_t>(r)];
                if (c.gen2 != 0) {
                    u = u * RootOfUnity(c.a1 * x1, c.ord1);
                    u = u * RootOfUnity(c.a2 * x2, c.ord2);
                } else if (c.ord1 > 1) {
                    u = u * RootOfUnity(c.a1 * x1, c.ord1);
                }
            }
            table_[static_cast<std::size_t>(m)] = u;
        }
    }

    long long compute_conductor() const {
        long long cond = 1;
        for (const auto& c : components_) {
            if (c.prime != 2) {
                unsigned long o = c.ord1 / std::gcd(c.a1 == 0 ? c.ord1 : c.a1, c.ord1);
                if (o == 1) continue;
                unsigned pc = 0;
                unsigned long t = o;
                while (t % static_cast<unsigned long>(c.prime) == 0) {
                    t /= static_cast<unsigned long>(c.prime);
                    ++pc;
                }
                cond *= ipow_ll(c.prime, pc + 1);
            } else {
                if (c.exp == 1) continue;
                if (c.exp == 2) {
                    if (c.a1 != 0) cond *= 4;
                    continue;
                }
                unsigned long o2 = c.a2 == 0 ? 1 : c.ord2 / std::gcd(c.a2, c.ord2);
                if (o2 > 1)
                    cond *= 4 * static_cast<long long>(o2);
                else if (c.a1 != 0)
                    cond *= 4;
            }
        }
        return cond;
    }

    Kind kind_ = Kind::Real;
    long long modulus_ = 1;
    long long conductor_ = 1;
    long long discriminant_ = 1;
    std::vector<Component> components_;
    std::vector<std::optional<RootOfUnity>> table_;
};

// All primitive real characters of conductor <= bound: the trivial character
// plus the Kronecker characters of fundamental discriminants |D| <= bound.
// Ordered by |D|, positive discriminant first on ties.
inline std::vector<DirichletCharacter> enumerate_real_characters(long long bound) {
    if (bound < 1) throw std::invalid_argument("bound must be >= 1");
    std::vector<DirichletCharacter> out{DirichletCharacter::trivial()};
    for (long long a = 2; a <= bound; ++a) {
        for (long long D : {a, -a}) {
            if (is_fundamental_discriminant(D)) out.push_back(DirichletCharacter::kronecker(D));
        }
    }
    return out;
}

// All phi(N) characters mod N in lexicographic exponent order (principal
// character first).
inline std::vector<DirichletCharacter> enumerate_characters_mod(long long N) {
    if (N < 1) throw std::invalid_argument("modulus must be positive");
    std::vector<unsigned long> radix;  // one entry per exponent slot
    auto f = factorize(Int(N));
    for (const auto& [pI, e] : f.factors) {
        long long p = static_cast<long long>(pI);
        long long pe = ipow_ll(p, e);
        if (p == 2) {
            if (e == 1) radix.push_back(1);
            else if (e == 2) radix.push_back(2);
            else {
                radix.push_back(2);
                radix.push_back(static_cast<unsigned long>(pe / 4));
            }
        } else {
            radix.push_back(static_cast<unsigned long>(pe / p * (p - 1)));
        }
    }
    std::vector<DirichletCharacter> out;
    std::vector<unsigned long> exps(radix.size(), 0);
    while (true) {
        out.push_back(DirichletCharacter::general(N, exps));
        std::size_t i = radix.size();
        while (i > 0) {
            --i;
            if (++exps[i] < radix[i]) break;
            exps[i] = 0;
            if (i == 0) return out;
        }
        if (radix.empty()) return out;
    }
}

}  // namespace primrep
