#pragma once

#include <map>
#include <string>
#include <vector>

#include "pilegame/cfinite.hpp"
#include "pilegame/error.hpp"
#include "pilegame/ratfunc.hpp"
#include "pilegame/single_player.hpp"

namespace pilegame {

/// ((x d/dx)^r f)(1) for r = 0..r_max.
inline std::vector<Rational> raw_moments(const RatFunc& f, int r_max) {
    if (r_max < 0) throw DomainError("raw_moments: negative order");
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(r_max) + 1);
    RatFunc g = f;
    for (int r = 0; r <= r_max; ++r) {
        if (r > 0) g = g.x_derivative();
        out.push_back(g.eval(1));
    }
    return out;
}

/// E[(X - mu)^r] from straight moments by binomial expansion; mu = straight[1].
inline std::vector<Rational> central_moments(const std::vector<Rational>& straight) {
    if (straight.size() < 2) throw DomainError("central_moments: need at least the first moment");
    const Rational mu = straight[1];
    std::vector<Rational> out(straight.size());
    for (std::size_t r = 0; r < straight.size(); ++r) {
        Rational acc = 0;
        for (std::size_t j = 0; j <= r; ++j)
            acc += Rational(binomial(static_cast<long>(r), static_cast<long>(j))) * straight[j] *
                   pow(-mu, static_cast<long>(r - j));
        out[r] = acc;
    }
    return out;
}

namespace single {

struct MomentReport {
    long n;
    long s;
    int r_max;
    std::vector<Rational> straight;  // E[X^r], r = 0..r_max
    std::vector<Rational> central;   // E[(X - mu)^r]
};

inline MomentReport moments(const GFTable& table, long s, int r_max) {
    if (r_max < 1) throw DomainError("moments: r_max must be at least 1");
    MomentReport rep{table.n, s, r_max, raw_moments(table.at(s), r_max), {}};
    rep.central = central_moments(rep.straight);
    return rep;
}

inline MomentReport moments(const GameSpec& spec, long n, long s, int r_max) {
    return moments(solve_gf(spec, n), s, r_max);
}

// ---------------------------------------------------------------------------
// Closed forms for the moments of the turn count.

namespace closed {

/// R = {1,-1}, p = 1/2.
inline Rational mean_pm1_half(long n, long s) { return Rational(n * (n + 1) - s * (s + 1)); }

inline Rational second_moment_pm1_half(long n, long s) {
    return make_rational((n - s) * (n + s + 1) * (5 * n * n + 5 * n - s * s - s - 1), 3);
}

/// The linear-in-n coefficient is -(14s^2 + 14s + 23). Writing -23 there
/// instead disagrees with the computed moments (26 vs 482/15 at n = 1, s = 0)
/// and with variance_pm1_half and third_central_pm1_half.
inline Rational third_moment_pm1_half(long n, long s) {
    const BigInt N(n), S(s);
    BigInt poly = 61 * N * N * N * N + 122 * N * N * N - (14 * S * S + 14 * S - 38) * N * N -
                  (14 * S * S + 14 * S + 23) * N + S * S * S * S + 2 * S * S * S + 8 * S * S + 7 * S - 3;
    return make_rational(BigInt((n - s) * (n + s + 1)) * poly, 15);
}

inline Rational variance_pm1_half(long n, long s) {
    return make_rational((n - s) * (n + s + 1) * (2 * n * n + 2 * n + 2 * s * s + 2 * s - 1), 3);
}

inline Rational third_central_pm1_half(long n, long s) {
    const BigInt N(n), S(s);
    BigInt poly = 16 * N * N * N * N + 32 * N * N * N + 8 * N * N * (2 * S * S + 2 * S + 1) +
                  8 * N * (2 * S * S + 2 * S - 1) + 16 * S * S * S * S + 32 * S * S * S + 8 * S * S - 8 * S - 3;
    return make_rational(BigInt((n - s) * (n + s + 1)) * poly, 15);
}

/// R = {1,-1}, any p != 1/2.
inline Rational mean_pm1(const Rational& p, long n, long s) {
    const Rational q = Rational(1) - p;
    const Rational bias = 2 * p - 1;
    if (bias == 0) throw DomainError("mean_pm1: requires p != 1/2");
    auto part = [&](long m) -> Rational { return bias * m + q * pow(q / p, m); };
    return (part(n) - part(s)) / (bias * bias);
}

/// C_u(m) = 2 C_u(m-1) + 1 - C_u(m-u-1), C_u(0) = C_u(-1) = ... = C_u(-u) = 0.
inline Rational c_u(long u, long m) {
    if (m <= 0) return 0;
    std::vector<Rational> c(static_cast<std::size_t>(m + u + 1), Rational(0));  // index j + u
    auto at = [&](long j) -> Rational& { return c[static_cast<std::size_t>(j + u)]; };
    for (long j = 1; j <= m; ++j) at(j) = 2 * at(j - 1) + 1 - at(j - u - 1);
    return at(m);
}

/// R = {1,-u}, p = 1/2.
inline Rational mean_1mu_half(long u, long n, long s) { return 2 * (c_u(u, n) - c_u(u, s)); }

/// R = {1,-2}, p = 2/3.
inline Rational mean_1m2_two_thirds(long n, long s) {
    auto part = [](long m) -> Rational { return make_rational(m * (3 * m + 5), 6) - make_rational(1, 9) * pow(make_rational(-1, 2), m); };
    return part(n) - part(s);
}

}  // namespace closed

enum class ClosedForm {
    mean_pm1_half,          ///< E[X], R={1,-1}, p=1/2
    raw_moments_pm1_half,   ///< E[X^2], E[X^3], R={1,-1}, p=1/2
    central_pm1_half,       ///< Var, third central moment, R={1,-1}, p=1/2
    mean_pm1_general,       ///< E[X], R={1,-1}, p != 1/2
    mean_1mu_half,          ///< E[X] = 2[C_u(n) - C_u(s)], R={1,-u}, p=1/2
    mean_1m2_two_thirds,    ///< E[X], R={1,-2}, p=2/3
};

struct ClosedFormMismatch {
    long n;
    long s;
    std::string quantity;
    Rational expected;
    Rational computed;
};

struct ClosedFormReport {
    ClosedForm which;
    std::size_t cases = 0;
    std::vector<ClosedFormMismatch> mismatches;
    bool ok() const { return mismatches.empty(); }
};

/// Compares a closed form with moments() for every 0 <= s <= n <= n_max.
/// `p` is used by mean_pm1_general, `u` by mean_1mu_half.
inline ClosedFormReport closed_form_check(ClosedForm which, long n_max, const Rational& p = make_rational(1, 2),
                                          long u = 1) {
    ClosedFormReport rep{which, 0, {}};
    GameSpec spec = GameSpec::plus_one_minus_one(make_rational(1, 2));
    int r_max = 1;
    switch (which) {
        case ClosedForm::mean_pm1_half: break;
        case ClosedForm::raw_moments_pm1_half:
        case ClosedForm::central_pm1_half: r_max = 3; break;
        case ClosedForm::mean_pm1_general:
            if (p == make_rational(1, 2)) throw DomainError("closed_form_check: general-p mean needs p != 1/2");
            spec = GameSpec::plus_one_minus_one(p);
            break;
        case ClosedForm::mean_1mu_half: spec = GameSpec::plus_one_minus_u(make_rational(1, 2), u); break;
        case ClosedForm::mean_1m2_two_thirds: spec = GameSpec::plus_one_minus_u(make_rational(2, 3), 2); break;
    }
    for (long n = 0; n <= n_max; ++n) {
        const GFTable table = solve_gf(spec, n);
        for (long s = 0; s <= n; ++s) {
            const MomentReport m = moments(table, s, r_max);
            std::map<std::string, std::pair<Rational, Rational>> checks;
            switch (which) {
                case ClosedForm::mean_pm1_half:
                    checks["E[X]"] = {closed::mean_pm1_half(n, s), m.straight[1]};
                    break;
                case ClosedForm::raw_moments_pm1_half:
                    checks["E[X^2]"] = {closed::second_moment_pm1_half(n, s), m.straight[2]};
                    checks["E[X^3]"] = {closed::third_moment_pm1_half(n, s), m.straight[3]};
                    break;
                case ClosedForm::central_pm1_half:
                    checks["Var"] = {closed::variance_pm1_half(n, s), m.central[2]};
                    checks["E[(X-mu)^3]"] = {closed::third_central_pm1_half(n, s), m.central[3]};
                    break;
                case ClosedForm::mean_pm1_general:
                    checks["E[X]"] = {closed::mean_pm1(p, n, s), m.straight[1]};
                    break;
                case ClosedForm::mean_1mu_half:
                    checks["E[X]"] = {closed::mean_1mu_half(u, n, s), m.straight[1]};
                    break;
                case ClosedForm::mean_1m2_two_thirds:
                    checks["E[X]"] = {closed::mean_1m2_two_thirds(n, s), m.straight[1]};
                    break;
            }
            for (const auto& [name, vals] : checks) {
                ++rep.cases;
                if (vals.first != vals.second) rep.mismatches.push_back({n, s, name, vals.first, vals.second});
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Shift-operator annihilators of moment sequences.

/// (E - 1)^2 (p E^u - q (E^{u-1} + ... + 1)) for R = {1,-u}; the same
/// polynomial annihilates E[X_{n,s}] along n and along s.
inline cfinite::ShiftOpPoly mean_annihilator(const Rational& p, long u) {
    const Rational q = Rational(1) - p;
    std::vector<Rational> tail(static_cast<std::size_t>(u + 1), -q);
    tail[static_cast<std::size_t>(u)] = p;
    return cfinite::ShiftOpPoly{-1, 1}.pow(2) * cfinite::ShiftOpPoly(Poly(tail));
}

/// Annihilator of E[X_{n,s}^2] along n for R = {1,-2}:
/// (N-1)^3 (pN + q)(p^2 N^2 - (p+1) q N + q^2)(pN^2 - qN - q)^2.
inline cfinite::ShiftOpPoly second_moment_annihilator_n_1m2(const Rational& p) {
    const Rational q = Rational(1) - p;
    using cfinite::ShiftOpPoly;
    return ShiftOpPoly{-1, 1}.pow(3) * ShiftOpPoly{q, p} * ShiftOpPoly{q * q, -(p + 1) * q, p * p} *
           ShiftOpPoly{-q, -q, p}.pow(2);
}

/// Annihilator of E[X_{n,s}^2] along s for R = {1,-2}: (S-1)^3 (pS^2 - qS - q)^2.
inline cfinite::ShiftOpPoly second_moment_annihilator_s_1m2(const Rational& p) {
    const Rational q = Rational(1) - p;
    using cfinite::ShiftOpPoly;
    return ShiftOpPoly{-1, 1}.pow(3) * ShiftOpPoly{-q, -q, p}.pow(2);
}

enum class Axis { n, s };

/// Residual of `op` applied to r-th moments of X_{n,s}.
/// Axis::n: data E[X^r_{fixed + i, fixed}] for i = 0..window-1 (start s = fixed).
/// Axis::s: data E[X^r_{fixed, i}] for i = 0..window-1 (target n = fixed).
inline Series annihilator_check(const cfinite::ShiftOpPoly& op, Axis axis, const GameSpec& spec, long fixed, int r,
                                std::size_t window) {
    if (window <= op.degree()) throw DomainError("annihilator_check: window too short for operator degree");
    if (r < 1) throw DomainError("annihilator_check: moment order must be positive");
    std::vector<Rational> data;
    data.reserve(window);
    if (axis == Axis::n) {
        for (std::size_t i = 0; i < window; ++i) {
            const long n = fixed + static_cast<long>(i);
            data.push_back(raw_moments(solve_gf(spec, n).at(fixed), r)[static_cast<std::size_t>(r)]);
        }
    } else {
        if (static_cast<long>(window) > fixed + 1) throw DomainError("annihilator_check: window exceeds 0..n");
        const GFTable table = solve_gf(spec, fixed);
        for (std::size_t i = 0; i < window; ++i)
            data.push_back(raw_moments(table.at(static_cast<long>(i)), r)[static_cast<std::size_t>(r)]);
    }
    return cfinite::apply_shift_annihilator(op, Series(std::move(data)));
}

}  // namespace single
}  // namespace pilegame
