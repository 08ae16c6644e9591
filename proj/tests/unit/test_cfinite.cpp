#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "pilegame/cfinite.hpp"
#include "pilegame/fixtures.hpp"
#include "pilegame/moments.hpp"
#include "pilegame/single_player.hpp"

using namespace pilegame;
using namespace pilegame::cfinite;
using oracle::Q;

namespace {

Series ints(std::initializer_list<long> v) {
    std::vector<Rational> c;
    for (long x : v) c.emplace_back(x);
    return Series(std::move(c));
}

const Rational half = make_rational(1, 2);

}  // namespace

TEST_CASE("guessing recovers small recurrences", "[cfinite]") {
    const auto fib = guess_recurrence(ints({1, 1, 2, 3, 5, 8, 13, 21, 34, 55}), 3);
    REQUIRE(fib);
    CHECK(fib->order() == 2);
    CHECK(fib->coeffs == std::vector<Rational>{-1, -1});
    CHECK(fib->offset == 0);

    const auto seven = guess_recurrence(ints({7, 7, 7, 7, 7, 7}), 1);
    REQUIRE(seven);
    CHECK(seven->order() == 1);
    CHECK(seven->coeffs == std::vector<Rational>{-1});

    const auto zeros = guess_recurrence(ints({0, 0, 0, 0, 0, 0}), 1);
    REQUIRE(zeros);
    CHECK(zeros->order() == 0);

    // Leading zeros are recorded as an offset.
    const auto shifted = guess_recurrence(ints({0, 0, 0, 1, 2, 4, 8, 16, 32, 64}), 2);
    REQUIRE(shifted);
    CHECK(shifted->offset == 3);
    CHECK(shifted->order() == 1);
    CHECK(shifted->coeffs == std::vector<Rational>{-2});
}

TEST_CASE("guessing reports no fit and insufficient data", "[cfinite]") {
    CHECK_FALSE(guess_recurrence(ints({1, 2, 4, 8, 16, 33, 64, 128}), 2));
    CHECK_THROWS_AS(guess_recurrence(ints({1, 1, 2, 3, 5}), 2), InsufficientData);

    // The reference win probabilities admit no recurrence of order <= 5.
    const auto wbar = fixtures::load(fixtures::kWbarPm1Half);
    REQUIRE(wbar.size() == 15);
    CHECK_FALSE(guess_recurrence(Series(wbar), 5));
}

TEST_CASE("recurrences convert to rational functions", "[cfinite]") {
    const Rational p = Q("1/3"), q = 1 - p;
    const CFiniteRec geo{{-q}, {0, p}, 0};
    CHECK(equivalent(rec_to_ratfunc(geo), Poly{0, p}, Poly{1, -q}));

    const CFiniteRec one{{}, {1}, 0};
    CHECK(rec_to_ratfunc(one) == RatFunc(1));

    const CFiniteRec fib{{-1, -1}, {1, 1}, 0};
    const RatFunc f = rec_to_ratfunc(fib);
    CHECK(f.den() == Poly{1, -1, -1});
    CHECK(series_expand(f, 5) == ints({1, 1, 2, 3, 5, 8}));

    const CFiniteRec off{{-2}, {3}, 2};
    CHECK(series_expand(rec_to_ratfunc(off), 5) == ints({0, 0, 3, 6, 12, 24}));

    CHECK_THROWS_AS(validate(CFiniteRec{{1, 0}, {1, 1}, 0}), DomainError);
    CHECK_THROWS_AS(validate(CFiniteRec{{1, 1}, {1}, 0}), DomainError);
}

TEST_CASE("round trip through the generating function", "[cfinite][property]") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t L = 1 + static_cast<std::size_t>(trial % 4);
        CFiniteRec rec;
        for (std::size_t i = 0; i < L; ++i) rec.coeffs.push_back(make_rational(d(rng), 1 + std::abs(d(rng))));
        if (rec.coeffs.back() == 0) rec.coeffs.back() = 1;
        for (std::size_t i = 0; i < L + static_cast<std::size_t>(trial % 2); ++i) rec.initials.emplace_back(d(rng));
        rec.offset = static_cast<std::size_t>(trial % 3);
        const std::size_t K = 60 + static_cast<std::size_t>(trial);
        CHECK(series_expand(rec_to_ratfunc(rec), K) == rec.terms(K + 1));
    }
}

TEST_CASE("guess inverts expansion for random rational functions", "[cfinite][property]") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 36; ++trial) {
        const long L = 1 + trial % 6;
        const RatFunc f(oracle::random_poly(rng, L - 1), oracle::random_poly(rng, L, true));
        const std::size_t order = static_cast<std::size_t>(f.den().degree());
        const Series s = series_expand(f, 2 * static_cast<std::size_t>(L) + 10);
        const auto rec = guess_recurrence(s, static_cast<std::size_t>(L));
        REQUIRE(rec);
        CHECK(equivalent(rec_to_ratfunc(*rec), f));
        // Minimality: one order less does not fit.
        if (rec->order() > 0 && rec->offset == 0 && rec->initials.size() == rec->order()) {
            CHECK(rec->order() == order);
            CHECK_FALSE(guess_recurrence(s, rec->order() - 1));
        }
    }
}

TEST_CASE("Hadamard products of rational sequences", "[cfinite]") {
    const Series ones = series_expand(RatFunc(Poly{1}, Poly{1, -1}), 20);
    const auto h = hadamard_guess(ones, ones, 1);
    REQUIRE(h);
    CHECK(equivalent(*h, Poly{1}, Poly{1, -1}));

    const auto spec = GameSpec::plus_one_minus_one(half);
    const Series b = single::dp_prob_series(spec, 1, 0, 30);
    const auto sq = hadamard_guess(b, b, 1);
    REQUIRE(sq);
    CHECK(equivalent(*sq, Poly{0, 1}, Poly{4, -1}));

    // W_{1,0,0}: B(k) * C(k-1) with C(-1) = 1
    std::vector<Rational> lag{1};
    Rational acc = 1;
    for (std::size_t k = 0; k + 1 < b.size(); ++k) lag.push_back(acc -= b[k]);
    const auto w = hadamard_guess(b, Series(lag), 2);
    REQUIRE(w);
    CHECK(equivalent(*w, Poly{0, 2}, Poly{4, -1}));

    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 12; ++trial) {
        const long d1 = 1 + trial % 3, d2 = 1 + (trial / 3) % 3;
        const RatFunc f(oracle::random_poly(rng, d1 - 1), oracle::random_poly(rng, d1, true));
        const RatFunc g(oracle::random_poly(rng, d2 - 1), oracle::random_poly(rng, d2, true));
        const std::size_t bound = static_cast<std::size_t>(d1 * d2);
        const std::size_t K = 2 * bound + 10;
        const Series a = series_expand(f, K), c = series_expand(g, K);
        const auto prod = hadamard_guess(a, c, bound);
        REQUIRE(prod);
        CHECK(prod->den().degree() <= static_cast<long>(bound));
        CHECK(series_expand(*prod, K) == hadamard(a, c));
    }
}

TEST_CASE("partial-sum complements", "[cfinite]") {
    const RatFunc g10(Poly{0, half}, Poly{1, -half});
    const Series h = series_expand(partial_sum_complement(g10), 20);
    for (std::size_t k = 0; k <= 20; ++k) CHECK(h[k] == pow(half, static_cast<long>(k)));
    CHECK(partial_sum_complement(RatFunc(1)).is_zero());
    CHECK(partial_sum_complement(RatFunc(0)) == RatFunc(Poly{1}, Poly{1, -1}));
}

TEST_CASE("shift annihilators", "[cfinite]") {
    CHECK(all_zero(apply_shift_annihilator(ShiftOpPoly{-1, 1}, ints({4, 4, 4, 4, 4}))));
    CHECK_FALSE(all_zero(apply_shift_annihilator(ShiftOpPoly{-1, 1}, ints({4, 4, 5}))));
    CHECK_THROWS_AS(apply_shift_annihilator(ShiftOpPoly{-1, 1}, ints({4})), DomainError);
    CHECK_THROWS_AS(ShiftOpPoly(Poly()), DomainError);

    std::vector<Rational> mean;
    for (long n = 0; n <= 10; ++n) mean.emplace_back(n * (n + 1));
    const ShiftOpPoly op = ShiftOpPoly{-1, 1}.pow(2) * ShiftOpPoly{-half, half};
    CHECK(op.degree() == 3);
    const Series r = apply_shift_annihilator(op, Series(mean));
    CHECK(r.size() == 8);
    CHECK(all_zero(r));

    const auto table = single::solve_gf(GameSpec::plus_one_minus_u(Q("2/3"), 2), 10);
    std::vector<Rational> by_s;
    for (long s = 0; s <= 10; ++s) by_s.push_back(raw_moments(table.at(s), 1)[1]);
    CHECK(all_zero(apply_shift_annihilator(ShiftOpPoly{-1, 1}.pow(3) * ShiftOpPoly{1, 2}, Series(by_s))));
}
