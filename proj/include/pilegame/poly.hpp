#pragma once

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pilegame/error.hpp"
#include "pilegame/rational.hpp"

namespace pilegame {

/// Dense univariate polynomial in x over the rationals.
///
/// Coefficients are stored in ascending powers with no trailing zeros, so
/// the zero polynomial is the empty vector and equality is structural.
class Poly {
public:
    Poly() = default;

    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

    /// Constant polynomial.
    static Poly constant(const Rational& value) { return Poly(std::vector<Rational>{value}); }

    /// coef * x^degree.
    static Poly monomial(const Rational& coef, std::size_t degree) {
        std::vector<Rational> c(degree + 1);
        c[degree] = coef;
        return Poly(std::move(c));
    }

    static Poly x() { return monomial(1, 1); }

    bool is_zero() const { return c_.empty(); }

    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }

    const std::vector<Rational>& coeffs() const { return c_; }

    /// Coefficient of x^i; zero beyond the degree.
    Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

    const Rational& leading() const {
        if (c_.empty()) throw DomainError("leading coefficient of the zero polynomial");
        return c_.back();
    }

    /// Index of the lowest nonzero coefficient.
    std::size_t low_order() const {
        if (c_.empty()) throw DomainError("low order of the zero polynomial");
        std::size_t i = 0;
        while (c_[i] == 0) ++i;
        return i;
    }

    Rational eval(const Rational& at) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rational> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
        return Poly(std::move(d));
    }

    /// p(x^k).
    Poly substitute_power(std::size_t k) const {
        if (k == 0) throw DomainError("substitute_power requires k >= 1");
        if (c_.empty()) return {};
        std::vector<Rational> r((c_.size() - 1) * k + 1);
        for (std::size_t i = 0; i < c_.size(); ++i) r[i * k] = c_[i];
        return Poly(std::move(r));
    }

    /// p(x) * x^k.
    Poly shift_up(std::size_t k) const {
        if (c_.empty() || k == 0) return *this;
        std::vector<Rational> r(k, Rational(0));
        r.insert(r.end(), c_.begin(), c_.end());
        return Poly(std::move(r));
    }

    /// p(x) / x^k; requires the low k coefficients to vanish.
    Poly shift_down(std::size_t k) const {
        if (k == 0 || c_.empty()) return *this;
        for (std::size_t i = 0; i < k && i < c_.size(); ++i)
            if (c_[i] != 0) throw DomainError("shift_down would drop a nonzero coefficient");
        if (k >= c_.size()) return {};
        return Poly(std::vector<Rational>(c_.begin() + static_cast<long>(k), c_.end()));
    }

    /// Terms of degree < k.
    Poly truncate(std::size_t k) const {
        if (k >= c_.size()) return *this;
        return Poly(std::vector<Rational>(c_.begin(), c_.begin() + static_cast<long>(k)));
    }

    Poly monic() const {
        if (c_.empty()) return {};
        return *this * (Rational(1) / c_.back());
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        const auto& big = a.c_.size() >= b.c_.size() ? a.c_ : b.c_;
        const auto& small = a.c_.size() >= b.c_.size() ? b.c_ : a.c_;
        std::vector<Rational> r = big;
        for (std::size_t i = 0; i < small.size(); ++i) r[i] += small[i];
        return Poly(std::move(r));
    }

    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }

    friend Poly operator*(const Poly& a, const Rational& k) {
        if (k == 0) return {};
        std::vector<Rational> r = a.c_;
        for (auto& v : r) v *= k;
        return Poly(std::move(r));
    }

    friend Poly operator*(const Rational& k, const Poly& a) { return a * k; }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Human-readable form in ascending powers, e.g. "1 - 1/2*x - 1/4*x^2".
    std::string to_string(const std::string& var = "x") const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            const Rational& v = c_[i];
            if (v == 0) continue;
            Rational mag = abs(v);
            if (first) {
                if (v < 0) os << "-";
            } else {
                os << (v < 0 ? " - " : " + ");
            }
            first = false;
            if (i == 0) {
                os << mag.get_str();
                continue;
            }
            if (mag != 1) os << mag.get_str() << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

/// Euclidean division: a = q*b + r with deg r < deg b.
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly{}, a};
    std::vector<Rational> rem = a.coeffs();
    std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
    const auto& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    const Rational inv_lead = Rational(1) / bc.back();
    for (std::size_t k = quo.size(); k-- > 0;) {
        Rational f = rem[k + db] * inv_lead;
        quo[k] = f;
        if (f == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= f * bc[j];
    }
    rem.resize(db);
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

/// a / b when b is known to divide a.
inline Poly exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw InternalError("exact_div: nonzero remainder");
    return q;
}

inline bool divides(const Poly& d, const Poly& a) { return divmod(a, d).second.is_zero(); }

/// Monic greatest common divisor.
inline Poly gcd(Poly a, Poly b) {
    if (a.is_zero() && b.is_zero()) throw DomainError("gcd of two zero polynomials");
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

inline Poly pow(const Poly& base, unsigned exponent) {
    Poly r = Poly::constant(1);
    for (unsigned i = 0; i < exponent; ++i) r *= base;
    return r;
}

}  // namespace pilegame
