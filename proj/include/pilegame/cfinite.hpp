#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "pilegame/error.hpp"
#include "pilegame/matrix.hpp"
#include "pilegame/poly.hpp"
#include "pilegame/ratfunc.hpp"
#include "pilegame/series.hpp"

namespace pilegame::cfinite {

/// Constant-coefficient recurrence
///
///     a(m) + c_1 a(m-1) + ... + c_L a(m-L) = 0,   m >= initials.size(),
///
/// for the sequence that follows `offset` leading zeros. `initials` holds
/// a(0), a(1), ... and has at least L entries; extra entries cover a
/// transient before the recurrence takes hold.
struct CFiniteRec {
    std::vector<Rational> coeffs;
    std::vector<Rational> initials;
    std::size_t offset = 0;

    std::size_t order() const { return coeffs.size(); }

    /// First `count` terms of the full sequence, including the leading zeros.
    Series terms(std::size_t count) const {
        std::vector<Rational> a;
        a.reserve(count);
        for (std::size_t i = 0; i < count && i < offset; ++i) a.emplace_back(0);
        std::vector<Rational> body;
        while (a.size() < count) {
            const std::size_t m = body.size();
            Rational v;
            if (m < initials.size()) {
                v = initials[m];
            } else {
                v = 0;
                for (std::size_t i = 1; i <= coeffs.size(); ++i) v -= coeffs[i - 1] * body[m - i];
            }
            body.push_back(v);
            a.push_back(v);
        }
        return Series(std::move(a));
    }

    friend bool operator==(const CFiniteRec&, const CFiniteRec&) = default;
};

/// Validates the CFiniteRec invariants; throws DomainError.
inline void validate(const CFiniteRec& rec) {
    if (rec.initials.size() < rec.order())
        throw DomainError("recurrence needs at least `order` initial terms");
    if (rec.order() > 0 && rec.coeffs.back() == 0)
        throw DomainError("trailing recurrence coefficient must be nonzero");
}

/// Terms (after stripping leading zeros) needed to try window order L:
/// the 2L-term fitting window plus at least four held-out terms.
inline std::size_t required_terms(std::size_t order) { return 2 * order + 4; }

/// Finds the recurrence of least window order L (L = 0, 1, ..., max_order)
/// that reproduces every supplied term. For each L the L unknowns are fixed
/// by the 2L-term window and all remaining terms serve as held-out checks;
/// a rank-deficient window takes any consistent solution. Leading zeros are
/// recorded as an offset before fitting. Returns nullopt when no order fits.
///
/// Throws InsufficientData when the search reaches an order the data
/// cannot support before any fit is found.
inline std::optional<CFiniteRec> guess_recurrence(const Series& terms, std::size_t max_order) {
    std::size_t offset = 0;
    while (offset < terms.size() && terms[offset] == 0) ++offset;
    if (offset == terms.size()) {
        if (terms.size() < required_terms(0)) throw InsufficientData("guess_recurrence: not enough terms");
        return CFiniteRec{};  // the zero sequence
    }
    const std::vector<Rational> a(terms.coeffs.begin() + static_cast<long>(offset), terms.coeffs.end());
    const std::size_t N = a.size();

    // L = 0 would require a(m) = 0 for all m, impossible since a(0) != 0.
    for (std::size_t L = 1; L <= max_order; ++L) {
        if (N < required_terms(L))
            throw InsufficientData("guess_recurrence: " + std::to_string(N) + " terms after leading zeros, order " +
                                   std::to_string(L) + " needs " + std::to_string(required_terms(L)));
        // Rows m = L..N-1 of a(m) + sum_i c_i a(m-i) = 0.
        Matrix<Rational> sys(N - L, L);
        std::vector<Rational> rhs(N - L);
        for (std::size_t m = L; m < N; ++m) {
            for (std::size_t i = 1; i <= L; ++i) sys(m - L, i - 1) = a[m - i];
            rhs[m - L] = -a[m];
        }
        auto c = particular_solution(std::move(sys), std::move(rhs));
        if (!c) continue;
        while (!c->empty() && c->back() == 0) c->pop_back();
        CFiniteRec rec;
        rec.coeffs = std::move(*c);
        rec.initials.assign(a.begin(), a.begin() + static_cast<long>(L));
        rec.offset = offset;
        return rec;
    }
    return std::nullopt;
}

/// Generating function P(x)/Q(x) of the sequence, Q = 1 + c_1 x + ... + c_L x^L.
inline RatFunc rec_to_ratfunc(const CFiniteRec& rec) {
    validate(rec);
    std::vector<Rational> q(rec.order() + 1);
    q[0] = 1;
    for (std::size_t i = 0; i < rec.order(); ++i) q[i + 1] = rec.coeffs[i];
    Poly Q(std::move(q));
    const std::size_t m = std::max(rec.order(), rec.initials.size());
    CFiniteRec body = rec;
    body.offset = 0;
    Poly head(body.terms(m).coeffs);
    Poly P = (head * Q).truncate(m);
    return RatFunc(P.shift_up(rec.offset), Q);
}

/// Rational generating function of the term-wise product of a and b, found
/// by fitting a recurrence of order at most `degree_bound`.
inline std::optional<RatFunc> hadamard_guess(const Series& a, const Series& b, std::size_t degree_bound) {
    auto rec = guess_recurrence(hadamard(a, b), degree_bound);
    if (!rec) return std::nullopt;
    return rec_to_ratfunc(*rec);
}

/// (1 - g)/(1 - x): generating function of 1 - (partial sums of g's coefficients).
inline RatFunc partial_sum_complement(const RatFunc& g) {
    if (g.den()[0] == 0) throw DomainError("partial_sum_complement: g has a pole at 0");
    return (RatFunc(1) - g) / RatFunc(Poly{1, -1});
}

/// Polynomial in a shift operator (N or S), ascending powers.
class ShiftOpPoly {
public:
    explicit ShiftOpPoly(Poly p) : p_(std::move(p)) {
        if (p_.is_zero()) throw DomainError("shift operator polynomial must be nonzero");
    }

    ShiftOpPoly(std::initializer_list<Rational> coeffs) : ShiftOpPoly(Poly(coeffs)) {}

    const Poly& poly() const { return p_; }
    std::size_t degree() const { return static_cast<std::size_t>(p_.degree()); }
    const std::vector<Rational>& coeffs() const { return p_.coeffs(); }

    friend ShiftOpPoly operator*(const ShiftOpPoly& a, const ShiftOpPoly& b) { return ShiftOpPoly(a.p_ * b.p_); }

    ShiftOpPoly pow(unsigned k) const { return ShiftOpPoly(pilegame::pow(p_, k)); }

private:
    Poly p_;
};

/// r(m) = sum_j op_j data(m + j) for every m where the window fits.
inline Series apply_shift_annihilator(const ShiftOpPoly& op, const Series& data) {
    const std::size_t d = op.degree();
    if (data.size() <= d) throw DomainError("apply_shift_annihilator: window too short for operator degree");
    std::vector<Rational> r(data.size() - d);
    const auto& c = op.coeffs();
    for (std::size_t m = 0; m < r.size(); ++m) {
        Rational acc = 0;
        for (std::size_t j = 0; j <= d; ++j) acc += c[j] * data[m + j];
        r[m] = acc;
    }
    return Series(std::move(r));
}

inline bool all_zero(const Series& s) {
    for (const auto& v : s.coeffs)
        if (v != 0) return false;
    return true;
}

}  // namespace pilegame::cfinite
