#pragma once

#include "primrep/int.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace primrep {

// e^{2 pi i k / m} stored in lowest terms with 0 <= k < m.
struct RootOfUnity {
    unsigned long num = 0;   // k
    unsigned long order = 1; // m

    RootOfUnity() = default;
    RootOfUnity(unsigned long k, unsigned long m) {
        if (m == 0) throw std::domain_error("root of unity needs positive order");
        k %= m;
        auto g = static_cast<unsigned long>(gcd_ll(static_cast<long long>(k == 0 ? m : k), static_cast<long long>(m)));
        num = k / g;
        order = m / g;
        if (num == 0) order = 1;
    }

    bool operator==(const RootOfUnity&) const = default;

    RootOfUnity operator*(const RootOfUnity& o) const {
        // k1/m1 + k2/m2 mod 1
        unsigned long m = order * o.order;  // moduli here stay tiny
        return RootOfUnity(num * o.order + o.num * order, m);
    }
    RootOfUnity conjugate() const { return RootOfUnity(order - num, order); }
    RootOfUnity pow(unsigned long e) const { return RootOfUnity(num * (e % order), order); }

    bool is_one() const { return order == 1; }
    // True exactly when the value lies in {1, -1, i, -i}.
    bool order_divides_4() const { return order == 1 || order == 2 || order == 4; }

    std::complex<double> to_complex() const {
        double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(order);
        return {std::cos(angle), std::sin(angle)};
    }
};

// Exact scalar for character arithmetic: zero, a root of unity, a Gaussian
// rational (reachable whenever every unit involved has order dividing 4), or
// a tracked complex double once higher-order roots enter additive mixes.
class ExactScalar {
  public:
    enum class Kind { Zero, Unit, Gaussian, Approx };

    ExactScalar() : kind_(Kind::Zero) {}

    static ExactScalar zero() { return ExactScalar(); }
    static ExactScalar one() { return from_unit(RootOfUnity()); }
    static ExactScalar from_unit(const RootOfUnity& u) {
        ExactScalar s;
        s.kind_ = Kind::Unit;
        s.unit_ = u;
        return s;
    }
    static ExactScalar from_rational(const Rational& q) {
        return gaussian(q, Rational(0));
    }
    static ExactScalar from_int(const Int& n) { return from_rational(Rational(n)); }
    static ExactScalar gaussian(const Rational& re, const Rational& im) {
        ExactScalar s;
        if (re == 0 && im == 0) return s;
        s.kind_ = Kind::Gaussian;
        s.re_ = re;
        s.im_ = im;
        return s;
    }
    static ExactScalar approx(std::complex<double> v, double err) {
        ExactScalar s;
        s.kind_ = Kind::Approx;
        s.approx_ = v;
        s.err_ = err;
        return s;
    }

    Kind kind() const { return kind_; }
    bool is_zero() const { return kind_ == Kind::Zero; }
    bool is_exact() const { return kind_ != Kind::Approx; }
    double error_bound() const { return kind_ == Kind::Approx ? err_ : 0.0; }

    const RootOfUnity& unit() const {
        if (kind_ != Kind::Unit) throw std::logic_error("not a unit scalar");
        return unit_;
    }

    ExactScalar conjugate() const {
        switch (kind_) {
            case Kind::Zero: return *this;
            case Kind::Unit: return from_unit(unit_.conjugate());
            case Kind::Gaussian: return gaussian(re_, -im_);
            case Kind::Approx: return approx(std::conj(approx_), err_);
        }
        return {};
    }

    ExactScalar operator-() const {
        switch (kind_) {
            case Kind::Zero: return *this;
            case Kind::Unit: return from_unit(unit_ * RootOfUnity(1, 2));
            case Kind::Gaussian: return gaussian(-re_, -im_);
            case Kind::Approx: return approx(-approx_, err_);
        }
        return {};
    }

    ExactScalar operator*(const ExactScalar& o) const {
        if (is_zero() || o.is_zero()) return zero();
        if (kind_ == Kind::Unit && o.kind_ == Kind::Unit)
            return from_unit(unit_ * o.unit_);
        if (is_exact() && o.is_exact()) {
            ExactScalar a = to_gaussian_or_approx(*this);
            ExactScalar b = to_gaussian_or_approx(o);
            if (a.kind_ == Kind::Gaussian && b.kind_ == Kind::Gaussian)
                return gaussian(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
            return mul_approx(a.to_approx(), b.to_approx());
        }
        return mul_approx(to_approx(), o.to_approx());
    }

    ExactScalar operator+(const ExactScalar& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        if (is_exact() && o.is_exact()) {
            ExactScalar a = to_gaussian_or_approx(*this);
            ExactScalar b = to_gaussian_or_approx(o);
            if (a.kind_ == Kind::Gaussian && b.kind_ == Kind::Gaussian)
                return gaussian(a.re_ + b.re_, a.im_ + b.im_);
            return add_approx(a.to_approx(), b.to_approx());
        }
        return add_approx(to_approx(), o.to_approx());
    }

    ExactScalar operator-(const ExactScalar& o) const { return *this + (-o); }

    ExactScalar scale(const Rational& q) const {
        if (q == 0) return zero();
        switch (kind_) {
            case Kind::Zero: return zero();
            case Kind::Unit:
                if (unit_.order_divides_4()) {
                    auto g = unit_gaussian(unit_);
                    return gaussian(g.first * q, g.second * q);
                }
                return mul_approx(to_approx(), approx_of_rational(q));
            case Kind::Gaussian: return gaussian(re_ * q, im_ * q);
            case Kind::Approx: return mul_approx(to_approx(), approx_of_rational(q));
        }
        return {};
    }

    ExactScalar pow(unsigned long e) const {
        if (e == 0) return one();
        if (kind_ == Kind::Unit) return from_unit(unit_.pow(e));
        ExactScalar r = one();
        for (unsigned long i = 0; i < e; ++i) r = r * (*this);
        return r;
    }

    std::complex<double> to_complex() const {
        switch (kind_) {
            case Kind::Zero: return {0.0, 0.0};
            case Kind::Unit: return unit_.to_complex();
            case Kind::Gaussian:
                return {static_cast<double>(re_), static_cast<double>(im_)};
            case Kind::Approx: return approx_;
        }
        return {};
    }

    // Exact real value; throws when the scalar is approximate or not real.
    Rational as_rational() const {
        switch (kind_) {
            case Kind::Zero: return Rational(0);
            case Kind::Unit:
                if (unit_.order == 1) return Rational(1);
                if (unit_.order == 2) return Rational(-1);
                throw std::domain_error("scalar is not a rational number");
            case Kind::Gaussian:
                if (im_ != 0) throw std::domain_error("scalar is not real");
                return re_;
            case Kind::Approx:
                throw std::domain_error("scalar is approximate, no exact value");
        }
        return {};
    }

    // Exact value equality; both operands must be exact.
    bool exact_eq(const ExactScalar& o) const {
        if (!is_exact() || !o.is_exact())
            throw std::logic_error("exact_eq on approximate scalar");
        ExactScalar a = canonical(*this), b = canonical(o);
        if (a.kind_ != b.kind_) return false;
        if (a.kind_ == Kind::Zero) return true;
        if (a.kind_ == Kind::Unit) return a.unit_ == b.unit_;
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    // Value equality within tol; exact on both sides falls back to exact_eq.
    bool close_to(const ExactScalar& o, double tol) const {
        if (is_exact() && o.is_exact()) return exact_eq(o);
        return std::abs(to_complex() - o.to_complex()) <= tol;
    }

    std::string str() const {
        switch (kind_) {
            case Kind::Zero: return "0";
            case Kind::Unit:
                if (unit_.order == 1) return "1";
                if (unit_.order == 2) return "-1";
                return "e(" + std::to_string(unit_.num) + "/" + std::to_string(unit_.order) + ")";
            case Kind::Gaussian: {
                std::string s = to_string(re_);
                if (im_ != 0) s += (im_ > 0 ? "+" : "") + to_string(im_) + "i";
                return s;
            }
            case Kind::Approx: {
                return "~(" + std::to_string(approx_.real()) + "," + std::to_string(approx_.imag()) + ")";
            }
        }
        return {};
    }

  private:
    static std::pair<Rational, Rational> unit_gaussian(const RootOfUnity& u) {
        if (u.order == 1) return {Rational(1), Rational(0)};
        if (u.order == 2) return {Rational(-1), Rational(0)};
        if (u.order == 4) return {Rational(0), Rational(u.num == 1 ? 1 : -1)};
        throw std::logic_error("unit order does not divide 4");
    }

    // Units of order dividing 4 become Gaussian; higher orders go float.
    static ExactScalar to_gaussian_or_approx(const ExactScalar& s) {
        if (s.kind_ != Kind::Unit) return s;
        if (s.unit_.order_divides_4()) {
            auto g = unit_gaussian(s.unit_);
            return gaussian(g.first, g.second);
        }
        return s.to_approx();
    }

    ExactScalar to_approx() const {
        if (kind_ == Kind::Approx) return *this;
        return approx(to_complex(), kind_ == Kind::Zero ? 0.0 : 4e-16);
    }

    static ExactScalar approx_of_rational(const Rational& q) {
        double v = static_cast<double>(q);
        return approx({v, 0.0}, std::abs(v) * 2.3e-16);
    }

    static ExactScalar add_approx(const ExactScalar& a, const ExactScalar& b) {
        auto v = a.approx_ + b.approx_;
        double err = a.err_ + b.err_ + std::abs(v) * 2.3e-16;
        return approx(v, err);
    }

    static ExactScalar mul_approx(const ExactScalar& a, const ExactScalar& b) {
        auto v = a.approx_ * b.approx_;
        double err = std::abs(a.approx_) * b.err_ + std::abs(b.approx_) * a.err_ +
                     a.err_ * b.err_ + std::abs(v) * 4.5e-16;
        return approx(v, err);
    }

    // Unit values of order dividing 4 normalize to Gaussian form so that
    // equality is structural.
    static ExactScalar canonical(const ExactScalar& s) {
        if (s.kind_ == Kind::Unit && s.unit_.order_divides_4())
            return to_gaussian_or_approx(s);
        return s;
    }

    Kind kind_ = Kind::Zero;
    RootOfUnity unit_;
    Rational re_, im_;
    std::complex<double> approx_{0.0, 0.0};
    double err_ = 0.0;
};

}  // namespace primrep
