#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "pilegame/cfinite.hpp"
#include "pilegame/error.hpp"
#include "pilegame/game_spec.hpp"
#include "pilegame/mc_oracle.hpp"
#include "pilegame/moments.hpp"
#include "pilegame/poly.hpp"
#include "pilegame/ratfunc.hpp"
#include "pilegame/series.hpp"
#include "pilegame/single_player.hpp"
#include "pilegame/two_player.hpp"

// JSON schemas
//
//   Rational        "num/den" or "num"
//   Poly            ["c0", "c1", ...]            ascending powers of x
//   RatFunc         {"num": Poly, "den": Poly}
//   GameSpec        "step:prob,step:prob,..."
//   Series          ["a0", "a1", ...]
//   CFiniteRec      {"order", "coeffs", "initials", "offset"}
//   GFTable         {"n", "spec", "gfs": {"0": RatFunc, ..., "n": RatFunc}, "common_denominator": Poly}
//   TwoPlayerResult {"n", "s1", "s2", "W", "L", "T", "wbar", "denominator_degree_bound"}
//   MomentReport    {"n", "s", "r_max", "straight", "central"}
//   EndgameMoments  {"n", "r_max", "y_straight", "y_central", "z_straight", "z_central"}
//   SimReport       integer tallies as decimal strings, statistics as decimal strings
//
// Decoding malformed input throws ParseError.

namespace pilegame {

using json = nlohmann::json;

inline std::string decimal_string(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

template <class F>
auto parse_guard(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

inline std::string u128_string(unsigned __int128 v) { return mc::detail::to_bigint(v).get_str(); }

inline unsigned __int128 u128_parse(const std::string& s) {
    BigInt z;
    if (z.set_str(s, 10) != 0 || z < 0) throw ParseError("expected a nonnegative integer string, got '" + s + "'");
    unsigned __int128 v = 0;
    for (char c : z.get_str()) v = v * 10 + static_cast<unsigned>(c - '0');
    return v;
}

inline std::uint64_t u64_parse(const json& j) {
    const std::string s = j.get<std::string>();
    const auto v = u128_parse(s);
    if (v > std::numeric_limits<std::uint64_t>::max()) throw ParseError("integer '" + s + "' out of range");
    return static_cast<std::uint64_t>(v);
}

}  // namespace detail

inline json rationals_to_json(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& r : v) a.push_back(to_string(r));
    return a;
}

inline std::vector<Rational> rationals_from_json(const json& j) {
    return pilegame::detail::parse_guard([&] {
        if (!j.is_array()) throw ParseError("expected an array of rationals");
        std::vector<Rational> out;
        for (const auto& e : j) out.push_back(parse_rational(e.get<std::string>()));
        return out;
    });
}

inline void to_json(json& j, const Poly& p) { j = rationals_to_json(p.coeffs()); }
inline void from_json(const json& j, Poly& p) { p = Poly(rationals_from_json(j)); }

inline void to_json(json& j, const RatFunc& f) { j = json{{"num", f.num()}, {"den", f.den()}}; }
inline void from_json(const json& j, RatFunc& f) {
    pilegame::detail::parse_guard([&] {
        Poly den = j.at("den").get<Poly>();
        if (den.is_zero()) throw ParseError("rational function with zero denominator");
        f = RatFunc(j.at("num").get<Poly>(), den);
        return 0;
    });
}

inline void to_json(json& j, const Series& s) { j = rationals_to_json(s.coeffs); }
inline void from_json(const json& j, Series& s) { s = Series(rationals_from_json(j)); }

namespace cfinite {

inline void to_json(json& j, const CFiniteRec& r) {
    j = json{{"order", r.order()},
             {"coeffs", rationals_to_json(r.coeffs)},
             {"initials", rationals_to_json(r.initials)},
             {"offset", r.offset}};
}

inline void from_json(const json& j, CFiniteRec& r) {
    pilegame::detail::parse_guard([&] {
        r.coeffs = rationals_from_json(j.at("coeffs"));
        r.initials = rationals_from_json(j.at("initials"));
        r.offset = j.at("offset").get<std::size_t>();
        if (j.contains("order") && j.at("order").get<std::size_t>() != r.order())
            throw ParseError("recurrence 'order' disagrees with its coefficient list");
        validate(r);
        return 0;
    });
}

}  // namespace cfinite

namespace single {

inline void to_json(json& j, const MomentReport& m) {
    j = json{{"n", m.n},
             {"s", m.s},
             {"r_max", m.r_max},
             {"straight", rationals_to_json(m.straight)},
             {"central", rationals_to_json(m.central)}};
}

inline void from_json(const json& j, MomentReport& m) {
    pilegame::detail::parse_guard([&] {
        m.n = j.at("n").get<long>();
        m.s = j.at("s").get<long>();
        m.r_max = j.at("r_max").get<int>();
        m.straight = rationals_from_json(j.at("straight"));
        m.central = rationals_from_json(j.at("central"));
        return 0;
    });
}

}  // namespace single

namespace two_player {

inline void to_json(json& j, const TwoPlayerResult& r) {
    j = json{{"n", r.n},   {"s1", r.s1}, {"s2", r.s2},
             {"W", r.W},   {"L", r.L},   {"T", r.T},
             {"wbar", to_string(r.wbar)},
             {"denominator_degree_bound", r.denominator_degree_bound}};
}

inline void from_json(const json& j, TwoPlayerResult& r) {
    pilegame::detail::parse_guard([&] {
        r.n = j.at("n").get<long>();
        r.s1 = j.at("s1").get<long>();
        r.s2 = j.at("s2").get<long>();
        r.W = j.at("W").get<RatFunc>();
        r.L = j.at("L").get<RatFunc>();
        r.T = j.at("T").get<RatFunc>();
        r.wbar = parse_rational(j.at("wbar").get<std::string>());
        r.denominator_degree_bound = j.at("denominator_degree_bound").get<std::size_t>();
        return 0;
    });
}

inline void to_json(json& j, const EndgameMoments& m) {
    j = json{{"n", m.n},
             {"r_max", m.r_max},
             {"y_straight", rationals_to_json(m.y_straight)},
             {"y_central", rationals_to_json(m.y_central)},
             {"z_straight", rationals_to_json(m.z_straight)},
             {"z_central", rationals_to_json(m.z_central)}};
}

inline void from_json(const json& j, EndgameMoments& m) {
    pilegame::detail::parse_guard([&] {
        m.n = j.at("n").get<long>();
        m.r_max = j.at("r_max").get<int>();
        m.y_straight = rationals_from_json(j.at("y_straight"));
        m.y_central = rationals_from_json(j.at("y_central"));
        m.z_straight = rationals_from_json(j.at("z_straight"));
        m.z_central = rationals_from_json(j.at("z_central"));
        return 0;
    });
}

}  // namespace two_player

namespace mc {

inline void to_json(json& j, const SimReport& r) {
    j = json{{"kind", r.two_player ? "two" : "single"},
             {"trials", std::to_string(r.trials)},
             {"completed", std::to_string(r.tally.completed)},
             {"truncated", std::to_string(r.tally.truncated)},
             {"wins", std::to_string(r.tally.wins)},
             {"sum_turns", std::to_string(r.tally.sum_turns)},
             {"sum_sq_turns", pilegame::detail::u128_string(r.tally.sum_sq_turns)},
             {"mean_exact", to_string(r.mean_exact)},
             {"mean", decimal_string(r.mean)},
             {"variance", decimal_string(r.variance)},
             {"stderr_mean", decimal_string(r.stderr_mean)},
             {"win_rate", decimal_string(r.win_rate)},
             {"stderr_win", decimal_string(r.stderr_win)}};
}

/// Rebuilds the report from its integer tallies; the decimal statistics are
/// recomputed, so a round trip reproduces the original bit for bit.
inline void from_json(const json& j, SimReport& r) {
    pilegame::detail::parse_guard([&] {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind != "two" && kind != "single") throw ParseError("SimReport kind must be 'single' or 'two'");
        Tally t;
        t.completed = pilegame::detail::u64_parse(j.at("completed"));
        t.truncated = pilegame::detail::u64_parse(j.at("truncated"));
        t.wins = pilegame::detail::u64_parse(j.at("wins"));
        t.sum_turns = pilegame::detail::u64_parse(j.at("sum_turns"));
        t.sum_sq_turns = pilegame::detail::u128_parse(j.at("sum_sq_turns").get<std::string>());
        SimConfig cfg{GameSpec::plus_one_minus_one(make_rational(1, 2)), 1};
        cfg.trials = pilegame::detail::u64_parse(j.at("trials"));
        if (t.completed + t.truncated != cfg.trials) throw ParseError("SimReport tallies do not add up to trials");
        r = detail::summarize(cfg, t, kind == "two");
        return 0;
    });
}

}  // namespace mc

}  // namespace pilegame

namespace nlohmann {

template <>
struct adl_serializer<pilegame::Rational> {
    static void to_json(json& j, const pilegame::Rational& r) { j = pilegame::to_string(r); }
    static void from_json(const json& j, pilegame::Rational& r) {
        r = pilegame::detail::parse_guard([&] { return pilegame::parse_rational(j.get<std::string>()); });
    }
};

template <>
struct adl_serializer<pilegame::GameSpec> {
    static void to_json(json& j, const pilegame::GameSpec& s) { j = s.to_string(); }
    static pilegame::GameSpec from_json(const json& j) {
        return pilegame::detail::parse_guard([&] { return pilegame::GameSpec::parse(j.get<std::string>()); });
    }
};

template <>
struct adl_serializer<pilegame::single::GFTable> {
    static void to_json(json& j, const pilegame::single::GFTable& t) {
        json gfs = json::object();
        for (std::size_t s = 0; s < t.gfs.size(); ++s) gfs[std::to_string(s)] = t.gfs[s];
        j = json{{"n", t.n}, {"spec", t.spec}, {"gfs", gfs}, {"common_denominator", t.common_denominator}};
    }
    static pilegame::single::GFTable from_json(const json& j) {
        return pilegame::detail::parse_guard([&] {
            const long n = j.at("n").get<long>();
            if (n < 0) throw pilegame::ParseError("GFTable: negative n");
            const json& gfs = j.at("gfs");
            if (!gfs.is_object() || gfs.size() != static_cast<std::size_t>(n) + 1)
                throw pilegame::ParseError("GFTable needs gfs keyed \"0\"..\"n\"");
            std::vector<pilegame::RatFunc> fs;
            for (long s = 0; s <= n; ++s) fs.push_back(gfs.at(std::to_string(s)).get<pilegame::RatFunc>());
            return pilegame::single::GFTable{n, j.at("spec").get<pilegame::GameSpec>(), std::move(fs),
                                             j.at("common_denominator").get<pilegame::Poly>()};
        });
    }
};

}  // namespace nlohmann
