#include <catch_amalgamated.hpp>

#include <map>

#include "oracles.hpp"
#include "pilegame/json_io.hpp"
#include "pilegame/mc_oracle.hpp"
#include "pilegame/moments.hpp"
#include "pilegame/two_player.hpp"

using namespace pilegame;
using namespace pilegame::mc;
using oracle::Q;

namespace {

const GameSpec fair = GameSpec::plus_one_minus_one(make_rational(1, 2));

SimConfig config(const GameSpec& spec, long n, std::uint64_t trials, std::uint64_t seed, unsigned threads = 0) {
    SimConfig c{spec, n};
    c.trials = trials;
    c.seed = seed;
    c.threads = threads;
    return c;
}

}  // namespace

TEST_CASE("block seeding is fixed", "[mc]") {
    CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
    auto a = block_engine(7, 3), b = block_engine(7, 3), c = block_engine(7, 4);
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
}

TEST_CASE("the sampler draws steps in proportion", "[mc]") {
    const ChoiceSampler s(GameSpec::parse("1:1/6,2:1/3,-1:1/2"));
    auto eng = block_engine(11, 0);
    std::map<long, int> hits;
    const int draws = 120000;
    for (int i = 0; i < draws; ++i) ++hits[s.draw(eng)];
    CHECK(std::abs(hits[1] - draws / 6) < 600);
    CHECK(std::abs(hits[2] - draws / 3) < 700);
    CHECK(std::abs(hits[-1] - draws / 2) < 700);

    CHECK_THROWS_AS(ChoiceSampler(GameSpec::parse(
                        "1:1/12157665459056928801,-1:12157665459056928800/12157665459056928801")),
                    DomainError);
}

TEST_CASE("results do not depend on the thread count", "[mc]") {
    const auto one = simulate_single(config(fair, 3, 20000, 5, 1));
    const auto four = simulate_single(config(fair, 3, 20000, 5, 4));
    CHECK(json(one).dump() == json(four).dump());
    const auto again = simulate_single(config(fair, 3, 20000, 5, 3));
    CHECK(json(one).dump() == json(again).dump());
    CHECK(json(one).dump() != json(simulate_single(config(fair, 3, 20000, 6, 1))).dump());

    auto two = config(fair, 2, 9000, 9, 1);
    auto two4 = two;
    two4.threads = 4;
    CHECK(json(simulate_two(two)).dump() == json(simulate_two(two4)).dump());
}

TEST_CASE("degenerate starts", "[mc]") {
    auto c = config(fair, 4, 100, 1);
    c.s = 4;
    const auto r = simulate_single(c);
    CHECK(r.tally.completed == 100);
    CHECK(r.mean == 0);

    auto t = config(fair, 4, 100, 1);
    t.s1 = 4;
    const auto w = simulate_two(t);
    CHECK(w.win_rate == 1);
    CHECK(w.mean == 0);
    t.s1 = 0;
    t.s2 = 5;
    CHECK(simulate_two(t).win_rate == 0);

    CHECK_THROWS_AS(simulate_single(config(fair, 3, 0, 1)), DomainError);
    auto neg = config(fair, 3, 10, 1);
    neg.s = -1;
    CHECK_THROWS_AS(simulate_single(neg), DomainError);
}

TEST_CASE("simulation agrees with exact values", "[mc]") {
    const std::uint64_t trials = 200000;
    const double k = 4.0;

    const auto m12 = simulate_single(config(GameSpec::plus_one_minus_u(Q("2/3"), 2), 1, trials, 21));
    CHECK(SimReport::within(m12.mean, 1.5, m12.stderr_mean, k));

    const auto three = simulate_single(config(fair, 3, trials, 22));
    INFO("truncated " << three.tally.truncated);
    CHECK(three.tally.truncated == 0);
    CHECK(SimReport::within(three.mean, 12.0, three.stderr_mean, k));
    const double var = single::closed::variance_pm1_half(3, 0).get_d();
    CHECK(SimReport::within(three.variance, var, 0.05 * var, 1.0));

    const auto w = simulate_two(config(fair, 3, trials, 23));
    CHECK(SimReport::within(w.win_rate, (Q("48/91")).get_d(), w.stderr_win, k));
    const Rational z = two_player::endgame_moments(fair, 3, 1).z_straight[1];
    CHECK(SimReport::within(w.mean, z.get_d(), w.stderr_mean, k));
}

TEST_CASE("a low cap truncates and is reported", "[mc]") {
    auto c = config(fair, 4, 10000, 3);
    c.max_turns_cap = 5;
    const auto r = simulate_single(c);
    CHECK(r.tally.truncated > 0);
    CHECK(r.tally.completed + r.tally.truncated == 10000);
    CHECK(config(fair, 4, 1, 1).cap() == 1024);
    CHECK(config(fair, 0, 1, 1).cap() == 64);
}
