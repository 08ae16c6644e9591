#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "pilegame/moments.hpp"

using namespace pilegame;
using namespace pilegame::single;
using oracle::Q;

namespace {

const Rational half = make_rational(1, 2);

/// E[X^r] of a geometric number of turns with success probability p.
Rational geometric_moment(const Rational& p, int r) {
    const Rational q = 1 - p;
    switch (r) {
        case 0: return 1;
        case 1: return 1 / p;
        case 2: return (1 + q) / (p * p);
        case 3: return (1 + 4 * q + q * q) / (p * p * p);
    }
    throw std::logic_error("geometric_moment: r > 3");
}

}  // namespace

TEST_CASE("moments from the generating function", "[moments]") {
    const auto m = moments(GameSpec::plus_one_minus_one(half), 2, 0, 3);
    CHECK(m.straight[0] == 1);
    CHECK(m.straight[1] == 6);
    CHECK(m.central[1] == 0);

    // n = 1 is geometric with success probability p.
    for (const Rational& p : {half, Q("1/3"), Q("2/3")})
        for (const GameSpec& spec : {GameSpec::plus_one_minus_one(p), GameSpec::plus_one_minus_u(p, 2)}) {
            const auto g = moments(spec, 1, 0, 3);
            for (int r = 0; r <= 3; ++r) CHECK(g.straight[static_cast<std::size_t>(r)] == geometric_moment(p, r));
        }
    const auto one = moments(GameSpec::plus_one_minus_one(half), 1, 0, 2);
    CHECK(one.straight[2] == 6);
    CHECK(one.central[2] == 2);

    CHECK(moments(GameSpec::plus_one_minus_u(Q("2/3"), 2), 3, 1, 1).straight[1] == Q("45/8"));

    for (long n = 0; n <= 6; ++n)
        for (long s = 0; s <= n; ++s) {
            const auto mm = moments(GameSpec::plus_two_minus_one(Q("3/5")), n, s, 4);
            CHECK(mm.central[2] >= 0);
            CHECK(mm.straight[0] == 1);
        }
}

TEST_CASE("moments agree with the first-end series", "[moments]") {
    // sum_k k^r B(k) converges fast enough that 400 terms pin the value to
    // well under 1e-30; compare in floating point against the exact moment.
    const auto spec = GameSpec::plus_one_minus_one(Q("2/3"));
    const Series b = dp_prob_series(spec, 3, 1, 400);
    const auto m = moments(spec, 3, 1, 3);
    for (int r = 1; r <= 3; ++r) {
        Rational acc = 0;
        for (std::size_t k = 0; k < b.size(); ++k) acc += b[k] * pow(Rational(static_cast<long>(k)), r);
        CHECK(std::abs(Rational(acc - m.straight[static_cast<std::size_t>(r)]).get_d()) < 1e-12);
    }
}

TEST_CASE("closed forms hold exactly", "[closed]") {
    CHECK(closed_form_check(ClosedForm::mean_pm1_half, 12).ok());
    CHECK(closed_form_check(ClosedForm::raw_moments_pm1_half, 8).ok());
    CHECK(closed_form_check(ClosedForm::central_pm1_half, 8).ok());
    for (const Rational& p : {Q("1/3"), Q("2/3"), Q("3/5")}) CHECK(closed_form_check(ClosedForm::mean_pm1_general, 8, p).ok());
    for (long u = 1; u <= 4; ++u) CHECK(closed_form_check(ClosedForm::mean_1mu_half, 8, half, u).ok());
    CHECK(closed_form_check(ClosedForm::mean_1m2_two_thirds, 8).ok());
    CHECK_THROWS_AS(closed_form_check(ClosedForm::mean_pm1_general, 3, half), DomainError);

    CHECK(closed::mean_pm1(Q("2/3"), 1, 0) == Q("3/2"));
    CHECK(closed::mean_1m2_two_thirds(1, 0) == Q("3/2"));
    for (long n = 0; n <= 12; ++n) CHECK(closed::c_u(1, n) == Rational(n * (n + 1) / 2));
}

TEST_CASE("third-moment polynomial with -23 in the linear term is rejected", "[closed]") {
    auto variant = [](long n, long s) {
        const long poly = 61 * n * n * n * n + 122 * n * n * n - (14 * s * s + 14 * s - 38) * n * n -
                          (14 * s * s + 14 * s - 23) * n + s * s * s * s + 2 * s * s * s + 8 * s * s + 7 * s - 3;
        return make_rational((n - s) * (n + s + 1) * poly, 15);
    };
    const auto m = moments(GameSpec::plus_one_minus_one(half), 1, 0, 3);
    CHECK(m.straight[3] == 26);
    CHECK(closed::third_moment_pm1_half(1, 0) == 26);
    CHECK(variant(1, 0) != 26);
    // The corrected polynomial is the one implied by the variance and third
    // central moment: E[X^3] = k3 + 3 mu Var + mu^3.
    for (long n = 0; n <= 10; ++n)
        for (long s = 0; s <= n; ++s) {
            const Rational mu = closed::mean_pm1_half(n, s);
            CHECK(closed::third_moment_pm1_half(n, s) ==
                  closed::third_central_pm1_half(n, s) + 3 * mu * closed::variance_pm1_half(n, s) + mu * mu * mu);
        }
}

TEST_CASE("higher-moment recurrences in s and n", "[identity]") {
    for (const Rational& p : {half, Q("1/3")}) {
        const Rational q = 1 - p;
        const auto spec = GameSpec::plus_one_minus_one(p);
        const int r_max = 5;
        std::vector<std::vector<MomentReport>> m;  // m[n][s]
        for (long n = 0; n <= 8; ++n) {
            const GFTable t = solve_gf(spec, n);
            m.emplace_back();
            for (long s = 0; s <= n; ++s) m.back().push_back(moments(t, s, r_max));
        }
        auto E = [&](long n, long s, int r) { return m[static_cast<std::size_t>(n)][static_cast<std::size_t>(s)].straight[static_cast<std::size_t>(r)]; };

        // E[X_s^r] = E[X_s^{r-1}] + sum_i C(r-1, i-1) (p E[X_{s+1}^i] + q E[X_{s-1}^i]), s-1 clamped at 0
        for (long n = 1; n <= 8; ++n)
            for (long s = 0; s < n; ++s)
                for (int r = 1; r <= r_max; ++r) {
                    Rational rhs = E(n, s, r - 1);
                    for (int i = 1; i <= r; ++i)
                        rhs += Rational(binomial(r - 1, i - 1)) * (p * E(n, s + 1, i) + q * E(n, std::max(0L, s - 1), i));
                    CHECK(E(n, s, r) == rhs);
                }

        // Delta(r, n, n-2) = sum_k C(r, k) [q Delta(k, n, n-1) + p Delta(k, n-1, n-2)]
        auto delta = [&](int r, long a, long b, long s) {
            Rational acc = 0;
            for (int i = 0; i <= r; ++i) acc += Rational(binomial(r, i)) * E(a, s, i) * E(b, s, r - i);
            return acc;
        };
        for (long n = 2; n <= 8; ++n)
            for (long s = 0; s <= n - 2; ++s)
                for (int r = 0; r <= r_max; ++r) {
                    Rational rhs = 0;
                    for (int k = 0; k <= r; ++k)
                        rhs += Rational(binomial(r, k)) * (q * delta(k, n, n - 1, s) + p * delta(k, n - 1, n - 2, s));
                    CHECK(delta(r, n, n - 2, s) == rhs);
                }
    }
}

TEST_CASE("shift annihilators of moment sequences", "[annihilator]") {
    for (const Rational& p : {half, Q("1/3"), Q("2/3")}) {
        for (long u = 1; u <= 3; ++u) {
            const auto spec = GameSpec::plus_one_minus_u(p, u);
            const auto op = mean_annihilator(p, u);
            CHECK(cfinite::all_zero(annihilator_check(op, Axis::n, spec, 0, 1, 13)));
            CHECK(cfinite::all_zero(annihilator_check(op, Axis::n, spec, 2, 1, 13)));
            CHECK(cfinite::all_zero(annihilator_check(op, Axis::s, spec, 12, 1, 13)));
        }
    }
    const Rational p = Q("2/3");
    const auto spec = GameSpec::plus_one_minus_u(p, 2);
    const cfinite::ShiftOpPoly factored = cfinite::ShiftOpPoly{-1, 1}.pow(3) * cfinite::ShiftOpPoly{1, 2};
    CHECK(cfinite::all_zero(annihilator_check(factored, Axis::s, spec, 12, 1, 13)));
    CHECK(cfinite::all_zero(annihilator_check(factored, Axis::n, spec, 0, 1, 13)));
    CHECK(cfinite::all_zero(annihilator_check(cfinite::ShiftOpPoly{-1, 1}, Axis::n, GameSpec::parse("1:1"), 0, 1, 5)) == false);

    const auto n_op = second_moment_annihilator_n_1m2(p);
    const auto s_op = second_moment_annihilator_s_1m2(p);
    CHECK(cfinite::all_zero(annihilator_check(n_op, Axis::n, spec, 0, 2, 14)));
    CHECK(cfinite::all_zero(annihilator_check(n_op, Axis::n, spec, 1, 2, 14)));
    CHECK(cfinite::all_zero(annihilator_check(s_op, Axis::s, spec, 12, 2, 13)));

    CHECK_THROWS_AS(annihilator_check(factored, Axis::s, spec, 3, 1, 4), DomainError);
    CHECK_THROWS_AS(annihilator_check(factored, Axis::s, spec, 12, 1, 14), DomainError);
}
