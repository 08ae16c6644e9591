#pragma once

#include <string>
#include <utility>

#include "pilegame/error.hpp"
#include "pilegame/poly.hpp"
#include "pilegame/rational.hpp"

namespace pilegame {

/// Reduced rational function num(x)/den(x) over the rationals.
///
/// Invariants: den != 0, gcd(num, den) = 1, the lowest-order nonzero
/// coefficient of den is 1 and zero is stored as 0/1. Because the form is
/// canonical, operator== is structural.
class RatFunc {
public:
    RatFunc() : num_(), den_(Poly::constant(1)) {}

    RatFunc(const Rational& c) : num_(Poly::constant(c)), den_(Poly::constant(1)) {}

    RatFunc(int c) : RatFunc(Rational(c)) {}

    explicit RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(1)) {}

    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static RatFunc x() { return RatFunc(Poly::x()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }

    Rational eval(const Rational& at) const {
        Rational d = den_.eval(at);
        if (d == 0) throw PoleError("rational function has a pole at x = " + pilegame::to_string(at));
        return num_.eval(at) / d;
    }

    /// f(x^k).
    RatFunc substitute_power(std::size_t k) const {
        return RatFunc(num_.substitute_power(k), den_.substitute_power(k));
    }

    RatFunc derivative() const {
        // (n/d)' = (n'd - nd')/d^2
        return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    /// x * f'(x), the operator whose powers produce moments.
    RatFunc x_derivative() const { return RatFunc::x() * derivative(); }

    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return {};
        // Cross-cancel first to keep the product small.
        Poly g1 = gcd(a.num_, b.den_);
        Poly g2 = gcd(b.num_, a.den_);
        return RatFunc(exact_div(a.num_, g1) * exact_div(b.num_, g2),
                       exact_div(a.den_, g2) * exact_div(b.den_, g1));
    }

    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw DivisionByZero("division by the zero rational function");
        return a * RatFunc(b.den_, b.num_);
    }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string to_string() const {
        if (den_ == Poly::constant(1)) return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

private:
    void normalize() {
        if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = Poly::constant(1);
            return;
        }
        Poly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = exact_div(num_, g);
            den_ = exact_div(den_, g);
        }
        Rational low = den_[den_.low_order()];
        if (low != 1) {
            Rational inv = Rational(1) / low;
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    Poly num_;
    Poly den_;
};

/// Equality by cross-multiplication; independent of normalization.
inline bool equivalent(const RatFunc& a, const RatFunc& b) {
    return a.num() * b.den() == b.num() * a.den();
}

/// Equality of a/b (given as unreduced polynomials) with f.
inline bool equivalent(const RatFunc& f, const Poly& num, const Poly& den) {
    return f.num() * den == num * f.den();
}

}  // namespace pilegame
