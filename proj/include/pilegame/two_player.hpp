#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pilegame/cfinite.hpp"
#include "pilegame/error.hpp"
#include "pilegame/game_spec.hpp"
#include "pilegame/matrix.hpp"
#include "pilegame/moments.hpp"
#include "pilegame/ratfunc.hpp"
#include "pilegame/series.hpp"
#include "pilegame/single_player.hpp"

// Two players alternate turns with the same choice set; the first player
// moves first. w(k) / l(k) are the probabilities that the first player wins /
// loses at its k-th turn (the second player's k-th turn for l). The
// generating function T counts total turns, one per player move.

namespace pilegame::two_player {

namespace detail {

/// C(k) = 1 - sum_{i<=k} B(i): probability of not having finished by turn k.
inline Series survival(const Series& b) {
    std::vector<Rational> c(b.size());
    Rational acc = 1;
    for (std::size_t k = 0; k < b.size(); ++k) {
        acc -= b[k];
        c[k] = acc;
    }
    return Series(std::move(c));
}

inline void check_starts(long n, long s1, long s2) {
    if (n < 1) throw DomainError("two-player game needs n >= 1");
    if (s1 < 0 || s2 < 0) throw DomainError("starting piles must be nonnegative");
}

}  // namespace detail

/// w_n(k, s1, s2) = B_n(k, s1) * C_n(k-1, s2), k = 0..K, with C_n(-1, s) = 1.
inline Series win_series(const GameSpec& spec, long n, long s1, long s2, std::size_t K) {
    detail::check_starts(n, s1, s2);
    const Series b1 = single::dp_prob_series(spec, n, s1, K);
    const Series c2 = detail::survival(single::dp_prob_series(spec, n, s2, K));
    std::vector<Rational> w(K + 1);
    w[0] = b1[0];
    for (std::size_t k = 1; k <= K; ++k) w[k] = b1[k] * c2[k - 1];
    return Series(std::move(w));
}

/// l_n(k, s1, s2) = C_n(k, s1) * B_n(k, s2): the first player has taken k
/// turns without finishing and the second finishes on its k-th turn.
inline Series lose_series(const GameSpec& spec, long n, long s1, long s2, std::size_t K) {
    detail::check_starts(n, s1, s2);
    const Series c1 = detail::survival(single::dp_prob_series(spec, n, s1, K));
    const Series b2 = single::dp_prob_series(spec, n, s2, K);
    return hadamard(c1, b2);
}

/// Upper bound n(n+1) on the denominator degree of W and L.
inline std::size_t degree_bound(long n) { return static_cast<std::size_t>(n * (n + 1)); }

/// Number of series terms used to fit W and L: twice the degree bound plus
/// ten, plus room for the leading zeros before the first possible win.
inline std::size_t fit_terms(long n) { return 2 * degree_bound(n) + 10 + static_cast<std::size_t>(n); }

struct WinLose {
    RatFunc W;
    RatFunc L;
};

namespace detail {

inline RatFunc fit_or_throw(const Series& a, const Series& b, std::size_t bound, const char* what) {
    auto f = cfinite::hadamard_guess(a, b, bound);
    if (!f) throw InternalError(std::string("no rational fit for ") + what + " within the degree bound");
    const Series expected = hadamard(a, b);
    if (series_expand(*f, expected.size() - 1) != expected)
        throw InternalError(std::string("re-expansion of the fitted ") + what + " disagrees with its series");
    return *f;
}

}  // namespace detail

/// Fits W and L as rational functions from their exact series.
inline WinLose guess_WL(const GameSpec& spec, long n, long s1, long s2) {
    detail::check_starts(n, s1, s2);
    if (s1 >= n) return {RatFunc(1), RatFunc(0)};
    const std::size_t K = fit_terms(n) - 1;
    const Series b1 = single::dp_prob_series(spec, n, s1, K);
    const Series b2 = single::dp_prob_series(spec, n, s2, K);
    const Series c1 = detail::survival(b1);
    const Series c2 = detail::survival(b2);
    std::vector<Rational> c2_lag(K + 1);
    c2_lag[0] = 1;
    for (std::size_t k = 1; k <= K; ++k) c2_lag[k] = c2[k - 1];
    const std::size_t bound = degree_bound(n);
    return {detail::fit_or_throw(b1, Series(std::move(c2_lag)), bound, "W"),
            detail::fit_or_throw(c1, b2, bound, "L")};
}

/// T(x) = W(x^2)/x + L(x^2). When the first player starts on the target
/// (W = 1, L = 0) the game is over before any turn and T = 1.
inline RatFunc make_T(const RatFunc& W, const RatFunc& L) {
    if (W.num()[0] != 0) {
        if (W == RatFunc(1) && L.is_zero()) return RatFunc(1);
        throw DomainError("make_T: W has a constant term but the game is not already won");
    }
    const RatFunc w2 = W.substitute_power(2);
    return RatFunc(w2.num().shift_down(1), w2.den()) + L.substitute_power(2);
}

struct TwoPlayerResult {
    long n;
    long s1;
    long s2;
    RatFunc W;
    RatFunc L;
    RatFunc T;
    Rational wbar;  // W(1)
    std::size_t denominator_degree_bound;
};

inline TwoPlayerResult solve_two_player(const GameSpec& spec, long n, long s1 = 0, long s2 = 0) {
    auto [W, L] = guess_WL(spec, n, s1, s2);
    RatFunc T = make_T(W, L);
    Rational wbar = W.eval(1);
    return {n, s1, s2, std::move(W), std::move(L), std::move(T), std::move(wbar), degree_bound(n)};
}

/// Exact first-player win probability from the x = 1 linear system over all
/// (s1, s2) in [0, n)^2. A first player reaching n wins before the second
/// player moves.
inline Rational winprob_exact(const GameSpec& spec, long n, long s1 = 0, long s2 = 0) {
    detail::check_starts(n, s1, s2);
    if (s1 >= n) return 1;
    if (s2 >= n) return 0;
    const auto dim = static_cast<std::size_t>(n * n);
    auto index = [n](long a, long b) { return static_cast<std::size_t>(a * n + b); };
    Matrix<Rational> a(dim, dim);
    std::vector<Rational> rhs(dim, Rational(0));
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) {
            const std::size_t row = index(i, j);
            a(row, row) += 1;
            for (const auto& c1 : spec.choices()) {
                const long t1 = GameSpec::next_state(i, c1.step, n);
                if (t1 >= n) {
                    rhs[row] += c1.prob;
                    continue;
                }
                for (const auto& c2 : spec.choices()) {
                    const long t2 = GameSpec::next_state(j, c2.step, n);
                    if (t2 >= n) continue;
                    a(row, index(t1, t2)) -= c1.prob * c2.prob;
                }
            }
        }
    }
    return linear_solve(std::move(a), std::move(rhs))[index(s1, s2)];
}

/// w(n) = 1/2 + 1/2 * sum_k B_n(k, 0)^2, valid whenever both players draw
/// from the same choice set. The sum is the value at x = 1 of the fitted
/// generating function of B_n(k, 0)^2 (denominator degree at most n^2).
inline Rational winprob_squares(const GameSpec& spec, long n) {
    if (n < 1) throw DomainError("winprob_squares: need n >= 1");
    const std::size_t bound = static_cast<std::size_t>(n * n);
    const std::size_t K = 2 * bound + 10 + static_cast<std::size_t>(n);
    const Series b = single::dp_prob_series(spec, n, 0, K);
    const RatFunc squares = detail::fit_or_throw(b, b, bound, "sum of squared end probabilities");
    return make_rational(1, 2) + squares.eval(1) / 2;
}

struct EndgameMoments {
    long n;
    int r_max;
    std::vector<Rational> y_straight;  // E[Y^r | first player wins], Y = first player's turns
    std::vector<Rational> y_central;
    std::vector<Rational> z_straight;  // E[Z^r], Z = total turns until someone wins
    std::vector<Rational> z_central;
};

/// Moments of Y_n (conditional on the first player winning) and Z_n, both
/// players starting from zero chips.
inline EndgameMoments endgame_moments(const GameSpec& spec, long n, int r_max) {
    if (r_max < 1) throw DomainError("endgame_moments: r_max must be at least 1");
    auto [W, L] = guess_WL(spec, n, 0, 0);
    const RatFunc T = make_T(W, L);
    EndgameMoments out{n, r_max, raw_moments(W, r_max), {}, raw_moments(T, r_max), {}};
    const Rational win = out.y_straight[0];
    for (auto& v : out.y_straight) v /= win;
    out.y_central = central_moments(out.y_straight);
    out.z_central = central_moments(out.z_straight);
    return out;
}

struct FixtureComparison {
    long n;
    Rational computed;
    Rational reference;
    bool match;
};

struct HolonomyReport {
    std::vector<Rational> computed;            // w(1..n_max) from winprob_exact
    std::vector<FixtureComparison> comparisons; // where computed and reference overlap
    std::vector<Rational> sequence;            // what the recurrence search ran on
    std::size_t max_order;
    std::optional<cfinite::CFiniteRec> fit;    // a fit here is unexpected and reported as found

    bool fixtures_match() const {
        for (const auto& c : comparisons)
            if (!c.match) return false;
        return true;
    }
};

/// Computes w(1..n_max), compares with `reference` (reference[i] is w(i+1))
/// and searches for a C-finite recurrence. With `extend`, reference values
/// past n_max are appended to the searched sequence. The default order
/// bound is floor(len/2) - 2 for a searched sequence of length len.
inline HolonomyReport holonomy_evidence(const GameSpec& spec, long n_max, const std::vector<Rational>& reference = {},
                                        bool extend = false, std::optional<std::size_t> max_order = std::nullopt) {
    if (n_max < 6) throw DomainError("holonomy_evidence: need n_max >= 6");
    HolonomyReport rep;
    for (long n = 1; n <= n_max; ++n) rep.computed.push_back(winprob_exact(spec, n));
    for (std::size_t i = 0; i < reference.size() && i < rep.computed.size(); ++i)
        rep.comparisons.push_back(
            {static_cast<long>(i + 1), rep.computed[i], reference[i], rep.computed[i] == reference[i]});
    rep.sequence = rep.computed;
    if (extend)
        for (std::size_t i = rep.computed.size(); i < reference.size(); ++i) rep.sequence.push_back(reference[i]);
    rep.max_order = max_order ? *max_order : rep.sequence.size() / 2 - 2;
    rep.fit = cfinite::guess_recurrence(Series(rep.sequence), rep.max_order);
    return rep;
}

}  // namespace pilegame::two_player
