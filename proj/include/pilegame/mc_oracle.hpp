#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "pilegame/error.hpp"
#include "pilegame/game_spec.hpp"
#include "pilegame/rational.hpp"

// Seeded Monte Carlo oracle.
//
// RNG contract: trials are grouped in blocks of kBlockSize; block b draws from
// std::mt19937_64 seeded with splitmix64(seed ^ splitmix64(b)). Choices are
// sampled exactly by drawing a uniform integer below the common denominator of
// the choice probabilities (rejection sampling, no floating point). Per-block
// integer tallies are summed in block order, so the report depends only on
// (config, seed) and not on the number of worker threads.

namespace pilegame::mc {

inline constexpr std::uint64_t kBlockSize = 4096;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 block_engine(std::uint64_t seed, std::uint64_t block) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(block)));
}

/// Exact sampler over a GameSpec's steps.
class ChoiceSampler {
public:
    explicit ChoiceSampler(const GameSpec& spec) {
        BigInt common = 1;
        for (const auto& c : spec.choices()) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.prob.get_den_mpz_t());
        if (common > BigInt("9223372036854775807"))
            throw DomainError("choice probabilities need a common denominator below 2^63 for sampling");
        denom_ = common.get_ui();
        std::uint64_t acc = 0;
        for (const auto& c : spec.choices()) {
            BigInt w = c.prob.get_num() * (common / c.prob.get_den());
            acc += w.get_ui();
            upper_.push_back(acc);
            steps_.push_back(c.step);
        }
        accept_below_ = denom_ * (std::numeric_limits<std::uint64_t>::max() / denom_);
    }

    template <class Engine>
    long draw(Engine& eng) const {
        std::uint64_t x;
        do {
            x = eng();
        } while (x >= accept_below_);
        x %= denom_;
        std::size_t i = 0;
        while (x >= upper_[i]) ++i;
        return steps_[i];
    }

private:
    std::uint64_t denom_ = 1;
    std::uint64_t accept_below_ = 0;
    std::vector<std::uint64_t> upper_;
    std::vector<long> steps_;
};

struct SimConfig {
    GameSpec spec;
    long n;
    long s = 0;   // single-player start
    long s1 = 0;  // two-player starts
    long s2 = 0;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 0;
    std::uint64_t max_turns_cap = 0;  // 0 selects 64 n^2 (at least 64)
    unsigned threads = 0;             // 0 selects hardware concurrency

    std::uint64_t cap() const {
        if (max_turns_cap) return max_turns_cap;
        const auto nn = static_cast<std::uint64_t>(n > 0 ? n : 1);
        return std::max<std::uint64_t>(64, 64 * nn * nn);
    }
};

/// Integer tallies; merging is associative and commutative.
struct Tally {
    std::uint64_t completed = 0;
    std::uint64_t truncated = 0;
    std::uint64_t wins = 0;
    std::uint64_t sum_turns = 0;
    unsigned __int128 sum_sq_turns = 0;

    void add_turns(std::uint64_t t) {
        ++completed;
        sum_turns += t;
        sum_sq_turns += static_cast<unsigned __int128>(t) * t;
    }

    Tally& operator+=(const Tally& o) {
        completed += o.completed;
        truncated += o.truncated;
        wins += o.wins;
        sum_turns += o.sum_turns;
        sum_sq_turns += o.sum_sq_turns;
        return *this;
    }
};

struct SimReport {
    bool two_player = false;
    std::uint64_t trials = 0;
    Tally tally;
    Rational mean_exact;  // sample mean of turns over completed trials
    double mean = 0;
    double variance = 0;  // unbiased sample variance
    double stderr_mean = 0;
    double win_rate = 0;  // two-player only: wins / completed
    double stderr_win = 0;

    /// |mean - target| <= k standard errors. A zero standard error demands equality.
    static bool within(double value, double target, double se, double k = 3.0) {
        return std::fabs(value - target) <= k * se;
    }
};

namespace detail {

inline BigInt to_bigint(unsigned __int128 v) {
    BigInt hi(static_cast<unsigned long>(v >> 64));
    BigInt lo(static_cast<unsigned long>(v & 0xFFFFFFFFFFFFFFFFULL));
    return (hi << 64) + lo;
}

template <class TrialFn>
Tally run_blocks(const SimConfig& cfg, TrialFn trial) {
    if (cfg.trials < 1) throw DomainError("simulation needs at least one trial");
    const std::uint64_t blocks = (cfg.trials + kBlockSize - 1) / kBlockSize;
    std::vector<Tally> per_block(blocks);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
            auto eng = block_engine(cfg.seed, b);
            const std::uint64_t begin = b * kBlockSize;
            const std::uint64_t end = std::min(cfg.trials, begin + kBlockSize);
            Tally t;
            for (std::uint64_t i = begin; i < end; ++i) trial(eng, t);
            per_block[b] = t;
        }
    };
    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, blocks));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    Tally total;
    for (const auto& t : per_block) total += t;
    return total;
}

inline SimReport summarize(const SimConfig& cfg, const Tally& t, bool two_player) {
    SimReport r;
    r.two_player = two_player;
    r.trials = cfg.trials;
    r.tally = t;
    if (t.completed == 0) return r;
    const BigInt c(static_cast<unsigned long>(t.completed));
    const BigInt s(static_cast<unsigned long>(t.sum_turns));
    r.mean_exact = make_rational(s, c);
    r.mean = r.mean_exact.get_d();
    if (t.completed > 1) {
        Rational var = (Rational(to_bigint(t.sum_sq_turns)) - Rational(s * s) / Rational(c)) / Rational(c - 1);
        r.variance = var.get_d();
        r.stderr_mean = std::sqrt(r.variance / static_cast<double>(t.completed));
    }
    if (two_player) {
        r.win_rate = static_cast<double>(t.wins) / static_cast<double>(t.completed);
        r.stderr_win = std::sqrt(r.win_rate * (1 - r.win_rate) / static_cast<double>(t.completed));
    }
    return r;
}

}  // namespace detail

/// Single player: turns until the pile first reaches n.
inline SimReport simulate_single(const SimConfig& cfg) {
    if (cfg.s < 0) throw DomainError("simulate_single: negative start");
    const ChoiceSampler sampler(cfg.spec);
    const std::uint64_t cap = cfg.cap();
    const long n = cfg.n;
    auto trial = [&](std::mt19937_64& eng, Tally& t) {
        long pile = cfg.s;
        std::uint64_t turns = 0;
        while (pile < n) {
            if (turns >= cap) {
                ++t.truncated;
                return;
            }
            pile = GameSpec::next_state(pile, sampler.draw(eng), n);
            ++turns;
        }
        t.add_turns(turns);
    };
    return detail::summarize(cfg, detail::run_blocks(cfg, trial), false);
}

/// Two players alternate, first player first; reports the first player's
/// win rate and the total number of turns played.
inline SimReport simulate_two(const SimConfig& cfg) {
    if (cfg.s1 < 0 || cfg.s2 < 0) throw DomainError("simulate_two: negative start");
    const ChoiceSampler sampler(cfg.spec);
    const std::uint64_t cap = cfg.cap();
    const long n = cfg.n;
    auto trial = [&](std::mt19937_64& eng, Tally& t) {
        long a = cfg.s1, b = cfg.s2;
        std::uint64_t turns = 0;
        if (a >= n) {
            ++t.wins;
            t.add_turns(0);
            return;
        }
        if (b >= n) {
            t.add_turns(0);
            return;
        }
        for (;;) {
            if (turns >= cap) {
                ++t.truncated;
                return;
            }
            a = GameSpec::next_state(a, sampler.draw(eng), n);
            ++turns;
            if (a >= n) {
                ++t.wins;
                break;
            }
            b = GameSpec::next_state(b, sampler.draw(eng), n);
            ++turns;
            if (b >= n) break;
        }
        t.add_turns(turns);
    };
    return detail::summarize(cfg, detail::run_blocks(cfg, trial), true);
}

}  // namespace pilegame::mc
