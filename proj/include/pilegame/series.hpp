#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "pilegame/error.hpp"
#include "pilegame/ratfunc.hpp"

namespace pilegame {

/// Truncated power series: coefficients of x^0..x^K.
struct Series {
    std::vector<Rational> coeffs;

    Series() = default;
    explicit Series(std::vector<Rational> c) : coeffs(std::move(c)) {}

    std::size_t size() const { return coeffs.size(); }

    /// K, the highest stored power. Only meaningful for a nonempty series.
    std::size_t truncation_order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

    const Rational& operator[](std::size_t i) const { return coeffs[i]; }
    Rational& operator[](std::size_t i) { return coeffs[i]; }

    friend bool operator==(const Series&, const Series&) = default;
};

/// Maclaurin coefficients 0..K of f, read off the linear recurrence
/// a(k) = num[k] - sum_{i>=1} den[i] a(k-i) that the denominator imposes.
inline Series series_expand(const RatFunc& f, std::size_t K) {
    const Poly& den = f.den();
    if (den[0] == 0) throw DomainError("series_expand: denominator vanishes at x = 0");
    // Normalization guarantees den[0] == 1 here.
    const auto& d = den.coeffs();
    const auto& n = f.num().coeffs();
    std::vector<Rational> a(K + 1);
    for (std::size_t k = 0; k <= K; ++k) {
        Rational v = k < n.size() ? n[k] : Rational(0);
        const std::size_t lim = std::min(k, d.size() - 1);
        for (std::size_t i = 1; i <= lim; ++i) v -= d[i] * a[k - i];
        a[k] = v;
    }
    return Series(std::move(a));
}

/// Term-wise (Hadamard) product, truncated to the shorter input.
inline Series hadamard(const Series& a, const Series& b) {
    std::size_t len = std::min(a.size(), b.size());
    std::vector<Rational> r(len);
    for (std::size_t i = 0; i < len; ++i) r[i] = a[i] * b[i];
    return Series(std::move(r));
}

}  // namespace pilegame
