#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pilegame/error.hpp"
#include "pilegame/game_spec.hpp"
#include "pilegame/matrix.hpp"
#include "pilegame/poly.hpp"
#include "pilegame/ratfunc.hpp"
#include "pilegame/series.hpp"

namespace pilegame::single {

/// All probability generating functions G_{n,s}(x), 0 <= s <= n, of the
/// number of turns a single player needs to reach n chips from s.
struct GFTable {
    long n;
    GameSpec spec;
    std::vector<RatFunc> gfs;
    /// A common denominator of every entry, constant term 1. For the linear
    /// solve this is det(I - xM); for the recursive constructions it is the
    /// lcm of the reduced denominators.
    Poly common_denominator;

    /// G_{n,s}; identically 1 once the start already meets the target.
    RatFunc at(long s) const {
        if (s < 0) throw DomainError("GFTable::at: negative start");
        if (s >= n) return RatFunc(1);
        return gfs[static_cast<std::size_t>(s)];
    }
};

inline Poly lcm(const Poly& a, const Poly& b) { return exact_div(a * b, gcd(a, b)); }

/// Rescales so the constant term is 1.
inline Poly normalize_constant(const Poly& p) {
    if (p[0] == 0) throw DomainError("polynomial vanishes at 0");
    return p * (Rational(1) / p[0]);
}

inline Poly lcm_of_denominators(const std::vector<RatFunc>& fs) {
    Poly l = Poly::constant(1);
    for (const auto& f : fs) l = lcm(l, f.den());
    return normalize_constant(l);
}

/// B_n(k, s) for k = 0..K by forward dynamic programming over the
/// transient states 0..n-1.
inline Series dp_prob_series(const GameSpec& spec, long n, long s, std::size_t K) {
    if (s < 0) throw DomainError("dp_prob_series: negative start");
    std::vector<Rational> out(K + 1, Rational(0));
    if (s >= n) {
        out[0] = 1;
        return Series(std::move(out));
    }
    std::vector<Rational> dist(static_cast<std::size_t>(n), Rational(0));
    dist[static_cast<std::size_t>(s)] = 1;
    for (std::size_t k = 1; k <= K; ++k) {
        std::vector<Rational> next(dist.size(), Rational(0));
        Rational absorbed = 0;
        for (long st = 0; st < n; ++st) {
            const Rational& mass = dist[static_cast<std::size_t>(st)];
            if (mass == 0) continue;
            for (const auto& c : spec.choices()) {
                long t = GameSpec::next_state(st, c.step, n);
                if (t >= n)
                    absorbed += mass * c.prob;
                else
                    next[static_cast<std::size_t>(t)] += mass * c.prob;
            }
        }
        out[k] = absorbed;
        dist = std::move(next);
    }
    return Series(std::move(out));
}

/// b_n(k, s): number of move sequences that first reach n chips at turn k,
/// each step having unit weight.
inline BigInt path_count(const std::vector<long>& steps, long n, long k, long s) {
    if (s < 0 || s > n) throw DomainError("path_count: need 0 <= s <= n");
    if (k < 0) throw DomainError("path_count: negative turn count");
    if (s >= n) return k == 0 ? 1 : 0;
    if (k == 0) return 0;
    std::vector<BigInt> ways(static_cast<std::size_t>(n), BigInt(0));
    ways[static_cast<std::size_t>(s)] = 1;
    BigInt absorbed = 0;
    for (long turn = 1; turn <= k; ++turn) {
        std::vector<BigInt> next(ways.size(), BigInt(0));
        absorbed = 0;
        for (long st = 0; st < n; ++st) {
            const BigInt& w = ways[static_cast<std::size_t>(st)];
            if (w == 0) continue;
            for (long r : steps) {
                long t = GameSpec::next_state(st, r, n);
                if (t >= n)
                    absorbed += w;
                else
                    next[static_cast<std::size_t>(t)] += w;
            }
        }
        ways = std::move(next);
    }
    return absorbed;
}

/// Solves G_{n,s} = sum_i prob_i * x * G_{n, next(s + r_i)} for s < n with
/// G = 1 on absorbed states, by fraction-free elimination over Q[x].
inline GFTable solve_gf(const GameSpec& spec, long n) {
    if (n < 0) throw DomainError("solve_gf: negative target");
    if (n == 0) return GFTable{0, spec, {RatFunc(1)}, Poly::constant(1)};
    const auto dim = static_cast<std::size_t>(n);
    Matrix<Poly> a(dim, dim);
    std::vector<Poly> b(dim);
    for (long s = 0; s < n; ++s) {
        const auto row = static_cast<std::size_t>(s);
        a(row, row) += Poly::constant(1);
        for (const auto& c : spec.choices()) {
            long t = GameSpec::next_state(s, c.step, n);
            Poly term = Poly::monomial(c.prob, 1);
            if (t >= n)
                b[row] += term;
            else
                a(row, static_cast<std::size_t>(t)) -= term;
        }
    }
    auto sol = solve_fraction_free(std::move(a), std::move(b));
    GFTable table{n, spec, {}, normalize_constant(sol.determinant)};
    for (auto& num : sol.numerators) table.gfs.emplace_back(std::move(num), sol.determinant);
    table.gfs.emplace_back(1);
    return table;
}

namespace detail {

/// G_{n,s} = G_{n,0} / G_{s,0} for chains where reaching n from s passes
/// through every intermediate level (steps of +1 only).
inline GFTable table_from_bottom_row(const GameSpec& spec, const std::vector<RatFunc>& from_zero) {
    const long n = static_cast<long>(from_zero.size()) - 1;
    GFTable table{n, spec, {}, Poly::constant(1)};
    for (long s = 0; s <= n; ++s)
        table.gfs.push_back(from_zero[static_cast<std::size_t>(n)] / from_zero[static_cast<std::size_t>(s)]);
    table.common_denominator = lcm_of_denominators(table.gfs);
    return table;
}

}  // namespace detail

/// R = {1, -1}: builds G_{m,0} from 1/G_m = 1/(p x G_{m-1}) - q/(p G_{m-2})
/// starting at G_{0,0} = 1, G_{1,0} = px/(1 - qx).
inline GFTable gf_recursive_1m1(const Rational& p, long n) {
    if (n < 0) throw DomainError("gf_recursive_1m1: negative target");
    const Rational q = Rational(1) - p;
    const RatFunc px = RatFunc(Poly::monomial(p, 1));
    std::vector<RatFunc> g{RatFunc(1)};
    if (n >= 1) g.push_back(px / RatFunc(Poly{1, -q}));
    for (long m = 2; m <= n; ++m) {
        const auto k = static_cast<std::size_t>(m);
        RatFunc inv = RatFunc(1) / (px * g[k - 1]) - RatFunc(q / p) / g[k - 2];
        g.push_back(RatFunc(1) / inv);
    }
    return detail::table_from_bottom_row(GameSpec::plus_one_minus_one(p), g);
}

/// R = {1, -u}: 1/G_m = 1/(p x G_{m-1}) - q/(p G_{m-u-1}), with G_{j,0} = 1
/// for every j <= 0.
inline GFTable gf_recursive_1mu(const Rational& p, long u, long n) {
    if (u < 1) throw DomainError("gf_recursive_1mu: u must be positive");
    if (n < 0) throw DomainError("gf_recursive_1mu: negative target");
    const Rational q = Rational(1) - p;
    const RatFunc px = RatFunc(Poly::monomial(p, 1));
    std::vector<RatFunc> g{RatFunc(1)};
    auto below = [&](long j) { return j <= 0 ? RatFunc(1) : g[static_cast<std::size_t>(j)]; };
    for (long m = 1; m <= n; ++m) {
        RatFunc inv = RatFunc(1) / (px * below(m - 1)) - RatFunc(q / p) / below(m - u - 1);
        g.push_back(RatFunc(1) / inv);
    }
    return detail::table_from_bottom_row(GameSpec::plus_one_minus_u(p, u), g);
}

/// Generating functions of the two ways an R = {2, -1} game can end from s:
/// `p` lands exactly on n, `q` overshoots to n + 1.
struct PQPair {
    RatFunc p;
    RatFunc q;
};

struct SplitTable {
    GFTable table;
    std::vector<PQPair> split;  // s = 0..n
};

/// R = {2, -1} built level by level from the exact-landing/overshoot split.
inline SplitTable gf_recursive_2m1(const Rational& p, long n) {
    if (n < 0) throw DomainError("gf_recursive_2m1: negative target");
    const Rational q = Rational(1) - p;
    const RatFunc px = RatFunc(Poly::monomial(p, 1));
    const RatFunc qx = RatFunc(Poly::monomial(q, 1));
    // level[m][s] for 0 <= s <= m
    std::vector<std::vector<PQPair>> level;
    level.push_back({PQPair{RatFunc(1), RatFunc(0)}});
    if (n >= 1) level.push_back({PQPair{RatFunc(0), px / RatFunc(Poly{1, -q})}, PQPair{RatFunc(1), RatFunc(0)}});
    for (long m = 2; m <= n; ++m) {
        const auto& prev = level[static_cast<std::size_t>(m - 1)];
        const PQPair& top = prev[static_cast<std::size_t>(m - 2)];  // (P, Q)_{m-1, m-2}
        const RatFunc denom = RatFunc(1) - qx * top.p;
        std::vector<PQPair> cur(static_cast<std::size_t>(m + 1), PQPair{RatFunc(0), RatFunc(0)});
        PQPair& last = cur[static_cast<std::size_t>(m - 1)];
        last.q = px / denom;
        last.p = qx * top.q / denom;
        for (long s = 0; s < m - 1; ++s) {
            const PQPair& below = prev[static_cast<std::size_t>(s)];
            cur[static_cast<std::size_t>(s)].p = last.p * below.p + below.q;
            cur[static_cast<std::size_t>(s)].q = last.q * below.p;
        }
        cur[static_cast<std::size_t>(m)] = PQPair{RatFunc(1), RatFunc(0)};
        level.push_back(std::move(cur));
    }
    SplitTable out{GFTable{n, GameSpec::plus_two_minus_one(p), {}, Poly::constant(1)},
                   level[static_cast<std::size_t>(n)]};
    for (const auto& pq : out.split) out.table.gfs.push_back(pq.p + pq.q);
    out.table.common_denominator = lcm_of_denominators(out.table.gfs);
    return out;
}

/// Which denominator recurrence to run.
struct DenomFamily {
    enum class Kind { plus_one_minus_one, plus_one_minus_u, plus_two_minus_one };
    Kind kind;
    long u = 1;

    static DenomFamily pm1() { return {Kind::plus_one_minus_one, 1}; }
    static DenomFamily one_minus_u(long u) { return {Kind::plus_one_minus_u, u}; }
    static DenomFamily two_minus_1() { return {Kind::plus_two_minus_one, 1}; }

    GameSpec spec(const Rational& p) const {
        switch (kind) {
            case Kind::plus_one_minus_one: return GameSpec::plus_one_minus_one(p);
            case Kind::plus_one_minus_u: return GameSpec::plus_one_minus_u(p, u);
            case Kind::plus_two_minus_one: return GameSpec::plus_two_minus_one(p);
        }
        throw InternalError("unknown denominator family");
    }
};

/// Denominator polynomial for target n from its recurrence in n:
///   {1,-1}:  Q_m = Q_{m-1} - q p x^2 Q_{m-2},           Q_0 = 1, Q_1 = 1 - qx
///   {1,-u}:  Q_m = Q_{m-1} - q p^u x^{u+1} Q_{m-u-1},   Q_0..Q_u from the solver
///   {2,-1}:  D_m = D_{m-1} - p q^2 x^3 D_{m-3},         D_0..D_2 from the solver
inline Poly denom_recurrence(const DenomFamily& family, const Rational& p, long n) {
    if (n < 0) throw DomainError("denom_recurrence: negative target");
    const Rational q = Rational(1) - p;
    std::vector<Poly> seq;
    std::size_t lag = 0;
    Poly factor;
    switch (family.kind) {
        case DenomFamily::Kind::plus_one_minus_one:
            seq = {Poly::constant(1), Poly{1, -q}};
            lag = 2;
            factor = Poly::monomial(q * p, 2);
            break;
        case DenomFamily::Kind::plus_one_minus_u: {
            if (family.u < 1) throw DomainError("denom_recurrence: u must be positive");
            const GameSpec spec = family.spec(p);
            for (long m = 0; m <= family.u && m <= n; ++m)
                seq.push_back(normalize_constant(solve_gf(spec, m).at(0).den()));
            lag = static_cast<std::size_t>(family.u + 1);
            factor = Poly::monomial(q * pow(p, family.u), lag);
            break;
        }
        case DenomFamily::Kind::plus_two_minus_one: {
            const GameSpec spec = family.spec(p);
            for (long m = 0; m <= 2 && m <= n; ++m) seq.push_back(solve_gf(spec, m).common_denominator);
            lag = 3;
            factor = Poly::monomial(p * q * q, 3);
            break;
        }
    }
    for (auto m = static_cast<long>(seq.size()); m <= n; ++m) {
        const auto k = static_cast<std::size_t>(m);
        seq.push_back(seq[k - 1] - factor * seq[k - lag]);
    }
    return seq[static_cast<std::size_t>(n)];
}

/// Closed form for b_n(n + t, s), R = {1, -1}:
///   t + s even, t - s <= 2n:  (n - s)/(n + t) * C(n + t, (t + s)/2)
///   t + s odd,  t + s <  2n:  (n + s + 1)/(n + t) * C(n + t, (t - s - 1)/2)
/// with binomials of negative lower index equal to zero. Returns nullopt
/// outside those regions.
inline std::optional<BigInt> theorem6_count(long n, long t, long s) {
    if (s < 0 || s > n) throw DomainError("theorem6_count: need 0 <= s <= n");
    if (t <= -n) throw DomainError("theorem6_count: need t > -n");
    const long len = n + t;
    BigInt numer;
    if ((t + s) % 2 == 0) {
        if (t - s > 2 * n) return std::nullopt;
        numer = BigInt(n - s) * binomial(len, (t + s) / 2);
    } else {
        if (t + s >= 2 * n) return std::nullopt;
        // (t - s - 1) is even here; floor division keeps negatives negative.
        const long k = (t - s - 1) >= 0 ? (t - s - 1) / 2 : -1;
        numer = BigInt(n + s + 1) * binomial(len, k);
    }
    if (numer % len != 0) throw InternalError("theorem6_count: non-integral value");
    return BigInt(numer / len);
}

}  // namespace pilegame::single
