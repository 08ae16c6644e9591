#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pilegame/fixtures.hpp"
#include "pilegame/game_spec.hpp"
#include "pilegame/ratfunc.hpp"
#include "pilegame/series.hpp"
#include "pilegame/single_player.hpp"
#include "pilegame/two_player.hpp"

// Cross-method verification pipelines. Single-player families compare the
// forward DP, the linear solve and the recursive construction; the two-player
// pipeline compares the fitted W against its series, the x = 1 linear solve
// and the sum of squares.

namespace pilegame::verify {

struct Family {
    enum class Kind { pm1, one_minus_u, two_minus_one, twoplayer };
    Kind kind;
    long u = 1;

    std::string name() const {
        switch (kind) {
            case Kind::pm1: return "pm1";
            case Kind::one_minus_u: return "1mu(" + std::to_string(u) + ")";
            case Kind::two_minus_one: return "2m1";
            case Kind::twoplayer: return "twoplayer";
        }
        return "?";
    }

    /// "pm1", "1mu", "1mu(3)", "2m1", "twoplayer"; "all" expands to several.
    static std::vector<Family> parse(const std::string& text) {
        if (text == "all")
            return {{Kind::pm1}, {Kind::one_minus_u, 2}, {Kind::one_minus_u, 3}, {Kind::two_minus_one}, {Kind::twoplayer}};
        if (text == "pm1") return {{Kind::pm1}};
        if (text == "2m1") return {{Kind::two_minus_one}};
        if (text == "twoplayer") return {{Kind::twoplayer}};
        if (text == "1mu") return {{Kind::one_minus_u, 2}};
        if (text.rfind("1mu(", 0) == 0 && text.size() > 5 && text.back() == ')') {
            const Rational u = parse_rational(std::string_view(text).substr(4, text.size() - 5));
            if (u.get_den() != 1 || u < 1 || u > 1000) throw ParseError("family " + text + ": u must be a positive integer");
            return {{Kind::one_minus_u, u.get_num().get_si()}};
        }
        throw ParseError("unknown family '" + text + "' (pm1, 1mu(u), 2m1, twoplayer, all)");
    }
};

struct Case {
    std::string family;
    long n;
    std::string check;
    bool pass;
    std::string detail;
};

struct Report {
    std::vector<Case> cases;

    bool ok() const {
        for (const auto& c : cases)
            if (!c.pass) return false;
        return true;
    }
    std::size_t failures() const {
        std::size_t f = 0;
        for (const auto& c : cases) f += c.pass ? 0 : 1;
        return f;
    }
};

inline constexpr std::size_t kSeriesTerms = 30;

namespace detail {

inline std::string first_diff(const Series& a, const Series& b) {
    for (std::size_t k = 0; k < a.size() && k < b.size(); ++k)
        if (a[k] != b[k]) return "coefficient " + std::to_string(k) + ": " + to_string(a[k]) + " vs " + to_string(b[k]);
    return a.size() == b.size() ? "" : "length differs";
}

inline single::GFTable recursive_table(const Family& f, const Rational& p, long n) {
    switch (f.kind) {
        case Family::Kind::pm1: return single::gf_recursive_1m1(p, n);
        case Family::Kind::one_minus_u: return single::gf_recursive_1mu(p, f.u, n);
        case Family::Kind::two_minus_one: return single::gf_recursive_2m1(p, n).table;
        case Family::Kind::twoplayer: break;
    }
    throw DomainError("recursive_table: no recursive construction for " + f.name());
}

inline single::DenomFamily denom_family(const Family& f) {
    switch (f.kind) {
        case Family::Kind::pm1: return single::DenomFamily::pm1();
        case Family::Kind::one_minus_u: return single::DenomFamily::one_minus_u(f.u);
        case Family::Kind::two_minus_one: return single::DenomFamily::two_minus_1();
        case Family::Kind::twoplayer: break;
    }
    throw DomainError("denom_family: no denominator recurrence for " + f.name());
}

inline GameSpec family_spec(const Family& f, const Rational& p) { return denom_family(f).spec(p); }

}  // namespace detail

/// DP vs linear solve vs recursive construction on the first kSeriesTerms
/// coefficients, for every start 0 <= s <= n.
inline Case three_methods(const Family& f, const Rational& p, long n) {
    const GameSpec spec = detail::family_spec(f, p);
    const single::GFTable solved = single::solve_gf(spec, n);
    const single::GFTable rec = detail::recursive_table(f, p, n);
    for (long s = 0; s <= n; ++s) {
        const Series dp = single::dp_prob_series(spec, n, s, kSeriesTerms - 1);
        const Series a = series_expand(solved.at(s), kSeriesTerms - 1);
        const Series b = series_expand(rec.at(s), kSeriesTerms - 1);
        if (dp != a) return {f.name(), n, "dp=solve=recursive", false, "s=" + std::to_string(s) + " solve " + detail::first_diff(dp, a)};
        if (dp != b) return {f.name(), n, "dp=solve=recursive", false, "s=" + std::to_string(s) + " recursive " + detail::first_diff(dp, b)};
    }
    return {f.name(), n, "dp=solve=recursive", true, std::to_string(n + 1) + " starts x " + std::to_string(kSeriesTerms) + " coefficients"};
}

/// Every reduced G_{n,s} denominator divides the recurrence output.
inline Case denominators_divide(const Family& f, const Rational& p, long n) {
    const Poly d = single::denom_recurrence(detail::denom_family(f), p, n);
    const single::GFTable solved = single::solve_gf(detail::family_spec(f, p), n);
    for (long s = 0; s <= n; ++s)
        if (!divides(solved.at(s).den(), d))
            return {f.name(), n, "denominators divide recurrence", false, "s=" + std::to_string(s)};
    return {f.name(), n, "denominators divide recurrence", true, "degree " + std::to_string(d.degree())};
}

/// R = {2, -1}: the exact-landing and overshoot parts add up to G_{n,s}.
inline Case split_sums(const Rational& p, long n) {
    const auto split = single::gf_recursive_2m1(p, n).split;
    const single::GFTable solved = single::solve_gf(GameSpec::plus_two_minus_one(p), n);
    for (long s = 0; s <= n; ++s)
        if (!equivalent(split[static_cast<std::size_t>(s)].p + split[static_cast<std::size_t>(s)].q, solved.at(s)))
            return {"2m1", n, "P+Q=G", false, "s=" + std::to_string(s)};
    return {"2m1", n, "P+Q=G", true, ""};
}

/// Fitted W and L re-expand to their series; W(1) agrees with the x = 1
/// solve and, at p = 1/2, with the sum of squares and the fixture list.
inline std::vector<Case> two_player_cases(const Rational& p, long n, const std::vector<Rational>& wbar_fixture) {
    const GameSpec spec = GameSpec::plus_one_minus_one(p);
    std::vector<Case> out;
    const std::size_t K = two_player::fit_terms(n) + 10;
    const auto [W, L] = two_player::guess_WL(spec, n, 0, 0);
    const Series wser = two_player::win_series(spec, n, 0, 0, K);
    const Series lser = two_player::lose_series(spec, n, 0, 0, K);
    const bool series_ok = series_expand(W, K) == wser && series_expand(L, K) == lser;
    out.push_back({"twoplayer", n, "series=guess", series_ok, std::to_string(K + 1) + " coefficients"});
    const Rational by_guess = W.eval(1);
    const Rational by_solve = two_player::winprob_exact(spec, n);
    out.push_back({"twoplayer", n, "guess=x1 solve", by_guess == by_solve, to_string(by_solve)});
    const Rational by_squares = two_player::winprob_squares(spec, n);
    out.push_back({"twoplayer", n, "squares=x1 solve", by_squares == by_solve, to_string(by_squares)});
    if (p == make_rational(1, 2) && static_cast<std::size_t>(n) <= wbar_fixture.size()) {
        const Rational& ref = wbar_fixture[static_cast<std::size_t>(n - 1)];
        out.push_back({"twoplayer", n, "fixture", ref == by_solve, to_string(ref)});
    }
    return out;
}

/// Runs the pipeline for n = 1..n_max (single player also n = 0).
/// `progress` receives one line per finished n.
inline Report run(const std::vector<Family>& families, long n_max, const Rational& p = make_rational(1, 2),
                  const std::string& data_dir = fixtures::default_data_dir(),
                  const std::function<void(const std::string&)>& progress = {}) {
    if (n_max < 1) throw DomainError("verify: nmax must be at least 1");
    Report rep;
    for (const auto& f : families) {
        if (f.kind == Family::Kind::twoplayer) {
            std::vector<Rational> fixture;
            if (p == make_rational(1, 2)) fixture = fixtures::load(fixtures::kWbarPm1Half, data_dir);
            for (long n = 1; n <= n_max; ++n) {
                for (auto& c : two_player_cases(p, n, fixture)) rep.cases.push_back(std::move(c));
                if (progress) progress(f.name() + " n=" + std::to_string(n) + " done");
            }
            continue;
        }
        for (long n = 0; n <= n_max; ++n) {
            rep.cases.push_back(three_methods(f, p, n));
            rep.cases.push_back(denominators_divide(f, p, n));
            if (f.kind == Family::Kind::two_minus_one) rep.cases.push_back(split_sums(p, n));
            if (progress) progress(f.name() + " n=" + std::to_string(n) + " done");
        }
    }
    return rep;
}

}  // namespace pilegame::verify
