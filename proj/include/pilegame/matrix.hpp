#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pilegame/error.hpp"
#include "pilegame/poly.hpp"
#include "pilegame/ratfunc.hpp"

namespace pilegame {

/// Dense row-major matrix over a field-like value type.
template <class T>
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
        if (rows == 0 || cols == 0) throw DomainError("matrix dimensions must be positive");
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<T> data_;
};

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v) {
    if (v.size() != a.cols()) throw DomainError("matrix-vector dimension mismatch");
    std::vector<T> r(a.rows(), T(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
    return r;
}

/// Some solution of a possibly rectangular or rank-deficient system, with
/// every free variable set to zero; nullopt when the system is inconsistent.
inline std::optional<std::vector<Rational>> particular_solution(Matrix<Rational> a, std::vector<Rational> b) {
    if (b.size() != a.rows()) throw DomainError("right-hand side length mismatch");
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<std::size_t> pivot_cols;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t p = row;
        while (p < m && a(p, col) == 0) ++p;
        if (p == m) continue;
        a.swap_rows(p, row);
        std::swap(b[p], b[row]);
        Rational inv = Rational(1) / a(row, col);
        for (std::size_t j = col; j < n; ++j) a(row, j) *= inv;
        b[row] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || a(i, col) == 0) continue;
            Rational f = a(i, col);
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(row, j);
            b[i] -= f * b[row];
        }
        pivot_cols.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < m; ++i)
        if (b[i] != 0) return std::nullopt;
    std::vector<Rational> x(n, Rational(0));
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) x[pivot_cols[i]] = b[i];
    return x;
}

/// Exact solution of a square nonsingular rational system.
inline std::vector<Rational> linear_solve(Matrix<Rational> a, std::vector<Rational> b) {
    if (a.rows() != a.cols()) throw DomainError("linear_solve needs a square matrix");
    if (b.size() != a.rows()) throw DomainError("right-hand side length mismatch");
    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) throw SingularMatrix("linear_solve: singular matrix");
        a.swap_rows(p, k);
        std::swap(b[p], b[k]);
        Rational inv = Rational(1) / a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rational f = a(i, k) * inv;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
            a(i, k) = 0;
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational acc = b[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
        x[i] = acc / a(i, i);
    }
    return x;
}

/// Result of Bareiss elimination over Q[x]: x_i = numerators[i] / determinant.
struct FractionFreeSolution {
    std::vector<Poly> numerators;
    Poly determinant;
};

/// Fraction-free (Bareiss) elimination on a polynomial matrix. Pivots are
/// chosen by lowest degree within the column; every division is exact.
inline FractionFreeSolution solve_fraction_free(Matrix<Poly> a, std::vector<Poly> b) {
    if (a.rows() != a.cols()) throw DomainError("solve_fraction_free needs a square matrix");
    if (b.size() != a.rows()) throw DomainError("right-hand side length mismatch");
    const std::size_t n = a.rows();
    Poly prev = Poly::constant(1);
    bool negate = false;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = n;
        for (std::size_t i = k; i < n; ++i) {
            if (a(i, k).is_zero()) continue;
            if (p == n || a(i, k).degree() < a(p, k).degree()) p = i;
        }
        if (p == n) throw SingularMatrix("solve_fraction_free: singular matrix");
        if (p != k) {
            a.swap_rows(p, k);
            std::swap(b[p], b[k]);
            negate = !negate;
        }
        const Poly& piv = a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Poly lead = a(i, k);
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = exact_div(piv * a(i, j) - lead * a(k, j), prev);
            b[i] = exact_div(piv * b[i] - lead * b[k], prev);
            a(i, k) = Poly{};
        }
        prev = a(k, k);
    }
    Poly det = negate ? -a(n - 1, n - 1) : a(n - 1, n - 1);
    std::vector<Poly> y(n);
    for (std::size_t i = n; i-- > 0;) {
        Poly acc = det * b[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= a(i, j) * y[j];
        y[i] = exact_div(acc, a(i, i));
    }
    return {std::move(y), std::move(det)};
}

/// Exact solution over the field of rational functions: clears row
/// denominators, then runs fraction-free elimination.
inline std::vector<RatFunc> linear_solve(const Matrix<RatFunc>& a, const std::vector<RatFunc>& b) {
    if (a.rows() != a.cols()) throw DomainError("linear_solve needs a square matrix");
    if (b.size() != a.rows()) throw DomainError("right-hand side length mismatch");
    const std::size_t n = a.rows();
    Matrix<Poly> pa(n, n);
    std::vector<Poly> pb(n);
    for (std::size_t i = 0; i < n; ++i) {
        Poly l = b[i].den();
        for (std::size_t j = 0; j < n; ++j) {
            const Poly& d = a(i, j).den();
            l = exact_div(l * d, gcd(l, d));
        }
        for (std::size_t j = 0; j < n; ++j) pa(i, j) = a(i, j).num() * exact_div(l, a(i, j).den());
        pb[i] = b[i].num() * exact_div(l, b[i].den());
    }
    auto sol = solve_fraction_free(std::move(pa), std::move(pb));
    std::vector<RatFunc> x;
    x.reserve(n);
    for (auto& num : sol.numerators) x.emplace_back(std::move(num), sol.determinant);
    return x;
}

}  // namespace pilegame
