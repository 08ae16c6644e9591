// pilegame: command-line front end.
//
// JSON goes to stdout, progress and errors to stderr.
// Exit status: 0 success, 1 usage or input error, 2 verification mismatch.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pilegame/cfinite.hpp"
#include "pilegame/fixtures.hpp"
#include "pilegame/json_io.hpp"
#include "pilegame/mc_oracle.hpp"
#include "pilegame/moments.hpp"
#include "pilegame/single_player.hpp"
#include "pilegame/two_player.hpp"
#include "pilegame/verify.hpp"

using namespace pilegame;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kMismatch = 2;

struct Output {
    bool pretty = false;
    bool quiet = false;
};

/// Replaces every {"num", "den"} object by a fraction string in x.
json prettify(const json& j) {
    if (j.is_object() && j.size() == 2 && j.contains("num") && j.contains("den"))
        return j.get<RatFunc>().to_string();
    if (j.is_object()) {
        json out = json::object();
        for (const auto& [k, v] : j.items()) out[k] = prettify(v);
        return out;
    }
    if (j.is_array()) {
        json out = json::array();
        for (const auto& v : j) out.push_back(prettify(v));
        return out;
    }
    return j;
}

void emit(const Output& o, const json& j) {
    if (o.pretty)
        std::cout << prettify(j).dump(2) << "\n";
    else
        std::cout << j.dump() << "\n";
}

void progress(const Output& o, const std::string& msg) {
    if (!o.quiet) std::cerr << msg << std::endl;
}

Rational rational_arg(const std::string& text) { return parse_rational(text); }

std::vector<Rational> rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    if (out.empty()) throw ParseError("empty list");
    return out;
}

std::vector<long> step_list(const std::string& text) {
    std::vector<long> out;
    for (const auto& r : rational_list(text)) {
        if (r.get_den() != 1 || !r.get_num().fits_slong_p()) throw ParseError("step '" + to_string(r) + "' is not an integer");
        out.push_back(r.get_num().get_si());
    }
    return out;
}

single::DenomFamily denom_family(const std::string& text) {
    const auto fam = verify::Family::parse(text);
    if (fam.size() != 1) throw ParseError("denom needs a single family");
    switch (fam[0].kind) {
        case verify::Family::Kind::pm1: return single::DenomFamily::pm1();
        case verify::Family::Kind::one_minus_u: return single::DenomFamily::one_minus_u(fam[0].u);
        case verify::Family::Kind::two_minus_one: return single::DenomFamily::two_minus_1();
        case verify::Family::Kind::twoplayer: break;
    }
    throw ParseError("denom: family must be pm1, 1mu(u) or 2m1");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact generating functions, moments and two-player statistics of pile games with boundary"};
    app.require_subcommand(1);

    Output out;
    std::string format;
    std::string data_dir = fixtures::default_data_dir();
    app.add_flag("--pretty", out.pretty, "Indented output with rational functions as fractions in x");
    app.add_option("--format", format, "json or pretty (default from $PILEGAME_OUTPUT, else json)")
        ->check(CLI::IsMember({"json", "pretty"}));
    app.add_flag("--quiet", out.quiet, "Suppress progress messages");
    app.add_option("--data-dir", data_dir, "Fixture directory (default $PILEGAME_DATA_DIR or the source tree)");

    std::string spec_text = "1:1/2,-1:1/2";
    long n = 0, s = 0, s1 = 0, s2 = 0, k = 0, t = 0;
    int r_max = 3;
    auto add_spec = [&](CLI::App* sub) {
        sub->add_option("--spec", spec_text, "Choice set as step:prob,... with exact rationals")->capture_default_str();
    };

    auto* gf = app.add_subcommand("gf", "Probability generating functions G_{n,s}");
    add_spec(gf);
    gf->add_option("--n", n, "Target")->required();
    std::optional<long> gf_s;
    gf->add_option("--s", gf_s, "Start (omit for the whole table)");
    std::string gf_method = "solve";
    gf->add_option("--method", gf_method, "solve or recursive (recursive needs {1,-u} or {2,-1})")
        ->check(CLI::IsMember({"solve", "recursive"}));

    auto* mom = app.add_subcommand("moments", "Straight and central moments of the turn count");
    add_spec(mom);
    mom->add_option("--n", n, "Target")->required();
    mom->add_option("--s", s, "Start");
    mom->add_option("--r", r_max, "Highest moment order")->capture_default_str();

    auto* pc = app.add_subcommand("pathcount", "Number of step sequences first reaching n at turn k");
    std::string steps_text = "1,-1";
    pc->add_option("--steps", steps_text, "Comma-separated steps")->capture_default_str();
    pc->add_option("--n", n, "Target")->required();
    pc->add_option("--k", k, "Turn")->required();
    pc->add_option("--s", s, "Start");

    auto* th6 = app.add_subcommand("theorem6", "Closed-form path count for R={1,-1} at turn n+t, with brute force");
    th6->add_option("--n", n, "Target")->required();
    th6->add_option("--t", t, "Turn offset, turn = n + t")->required();
    th6->add_option("--s", s, "Start");

    auto* den = app.add_subcommand("denom", "Denominator polynomial from the recurrence in n");
    std::string family_text = "pm1";
    std::string p_text = "1/2";
    den->add_option("--family", family_text, "pm1, 1mu(u) or 2m1")->capture_default_str();
    den->add_option("--p", p_text, "Probability of the positive step")->capture_default_str();
    den->add_option("--n", n, "Target")->required();

    auto* wp = app.add_subcommand("winprob", "Exact first-player win probability");
    add_spec(wp);
    wp->add_option("--n", n, "Target")->required();
    wp->add_option("--s1", s1, "First player's start");
    wp->add_option("--s2", s2, "Second player's start");
    std::string wp_method = "solve";
    wp->add_option("--method", wp_method, "solve, guess or squares")->check(CLI::IsMember({"solve", "guess", "squares"}));

    auto* tp = app.add_subcommand("twoplayer", "Fitted W, L and T generating functions");
    add_spec(tp);
    tp->add_option("--n", n, "Target")->required();
    tp->add_option("--s1", s1, "First player's start");
    tp->add_option("--s2", s2, "Second player's start");

    auto* eg = app.add_subcommand("endgame", "Moments of Y_n (first player's turns given a win) and Z_n (total turns)");
    add_spec(eg);
    eg->add_option("--n", n, "Target")->required();
    eg->add_option("--r", r_max, "Highest moment order")->capture_default_str();

    auto* gs = app.add_subcommand("guess", "Guess a C-finite recurrence from exact terms");
    std::string terms_text;
    std::size_t max_order = 0;
    gs->add_option("--terms", terms_text, "Comma-separated exact rationals")->required();
    gs->add_option("--max-order", max_order, "Largest order to try")->required();

    auto* sim = app.add_subcommand("simulate", "Seeded Monte Carlo estimate");
    add_spec(sim);
    sim->add_option("--n", n, "Target")->required();
    bool two = false;
    sim->add_flag("--two", two, "Two-player race (uses --s1/--s2)");
    sim->add_option("--s", s, "Single-player start");
    sim->add_option("--s1", s1, "First player's start");
    sim->add_option("--s2", s2, "Second player's start");
    std::uint64_t trials = 1'000'000, seed = 1, cap = 0;
    unsigned threads = 0;
    sim->add_option("--trials", trials, "Number of trials")->capture_default_str();
    sim->add_option("--seed", seed, "64-bit seed")->capture_default_str();
    sim->add_option("--cap", cap, "Turn cap per trial (0: 64 n^2)")->capture_default_str();
    sim->add_option("--threads", threads, "Worker threads (0: all cores); output does not depend on it");
    std::string target_mean, target_win;
    sim->add_option("--target-mean", target_mean, "Exact mean to compare against");
    sim->add_option("--target-win", target_win, "Exact win probability to compare against");

    auto* ver = app.add_subcommand("verify", "Cross-method verification pipeline");
    std::string vfamily = "all";
    long nmax = 6;
    ver->add_option("--family", vfamily, "pm1, 1mu(u), 2m1, twoplayer or all")->capture_default_str();
    ver->add_option("--nmax", nmax, "Largest target")->capture_default_str();
    ver->add_option("--p", p_text, "Probability of the positive step")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, std::cout, std::cerr);
        return rc == 0 ? kOk : kUsage;
    }

    if (format.empty())
        if (const char* env = std::getenv("PILEGAME_OUTPUT"); env && std::string(env) == "pretty") out.pretty = true;
    if (format == "pretty") out.pretty = true;

    try {
        if (*gf) {
            const GameSpec spec = GameSpec::parse(spec_text);
            single::GFTable table = single::solve_gf(spec, n);
            if (gf_method == "recursive") {
                const auto& c = spec.choices();
                if (c.size() == 2 && c[0].step == 1 && c[1].step < 0)
                    table = single::gf_recursive_1mu(c[0].prob, -c[1].step, n);
                else if (c.size() == 2 && c[0].step == 2 && c[1].step == -1)
                    table = single::gf_recursive_2m1(c[0].prob, n).table;
                else
                    throw DomainError("recursive construction needs spec 1:p,-u:q or 2:p,-1:q");
            }
            if (gf_s) {
                if (*gf_s < 0 || *gf_s > n) throw DomainError("gf: need 0 <= s <= n");
                emit(out, json{{"n", n}, {"s", *gf_s}, {"spec", spec}, {"gf", table.at(*gf_s)}});
            } else {
                emit(out, table);
            }
        } else if (*mom) {
            const auto rep = single::moments(GameSpec::parse(spec_text), n, s, r_max);
            json j = rep;
            j["spec"] = spec_text;
            emit(out, j);
        } else if (*pc) {
            const auto steps = step_list(steps_text);
            std::vector<Choice> uniform;
            for (long st : steps) uniform.push_back({st, make_rational(1, static_cast<long>(steps.size()))});
            GameSpec{uniform};  // validates the step set
            emit(out, json{{"steps", steps}, {"n", n}, {"k", k}, {"s", s},
                           {"count", to_string(single::path_count(steps, n, k, s))}});
        } else if (*th6) {
            const auto closed = single::theorem6_count(n, t, s);
            const BigInt brute = single::path_count({1, -1}, n, n + t, s);
            json j{{"n", n}, {"t", t}, {"s", s}, {"brute_force", to_string(brute)}};
            if (!closed) {
                j["closed_form"] = nullptr;
                j["in_region"] = false;
                emit(out, j);
                return kOk;
            }
            j["closed_form"] = to_string(*closed);
            j["in_region"] = true;
            j["agree"] = *closed == brute;
            emit(out, j);
            return *closed == brute ? kOk : kMismatch;
        } else if (*den) {
            const Rational p = rational_arg(p_text);
            const auto fam = denom_family(family_text);
            const Poly d = single::denom_recurrence(fam, p, n);
            const single::GFTable table = single::solve_gf(fam.spec(p), n);
            bool all_divide = true;
            for (long st = 0; st <= n; ++st) all_divide = all_divide && divides(table.at(st).den(), d);
            emit(out, json{{"family", family_text}, {"p", to_string(p)}, {"n", n}, {"denominator", d},
                           {"all_gf_denominators_divide", all_divide}});
            return all_divide ? kOk : kMismatch;
        } else if (*wp) {
            const GameSpec spec = GameSpec::parse(spec_text);
            Rational w;
            if (wp_method == "solve") {
                w = two_player::winprob_exact(spec, n, s1, s2);
            } else if (wp_method == "guess") {
                w = two_player::solve_two_player(spec, n, s1, s2).wbar;
            } else {
                if (s1 != 0 || s2 != 0) throw DomainError("winprob --method squares needs s1 = s2 = 0");
                w = two_player::winprob_squares(spec, n);
            }
            emit(out, json{{"spec", spec_text}, {"n", n}, {"s1", s1}, {"s2", s2}, {"method", wp_method},
                           {"wbar", to_string(w)}});
        } else if (*tp) {
            progress(out, "fitting W and L for n=" + std::to_string(n));
            json j = two_player::solve_two_player(GameSpec::parse(spec_text), n, s1, s2);
            j["spec"] = spec_text;
            emit(out, j);
        } else if (*eg) {
            progress(out, "fitting W and L for n=" + std::to_string(n));
            json j = two_player::endgame_moments(GameSpec::parse(spec_text), n, r_max);
            j["spec"] = spec_text;
            emit(out, j);
        } else if (*gs) {
            const auto terms = rational_list(terms_text);
            const auto rec = cfinite::guess_recurrence(Series(terms), max_order);
            json j{{"terms", terms.size()}, {"max_order", max_order}};
            if (rec) {
                j["fit"] = *rec;
                j["gf"] = cfinite::rec_to_ratfunc(*rec);
            } else {
                j["fit"] = nullptr;
            }
            emit(out, j);
        } else if (*sim) {
            mc::SimConfig cfg{GameSpec::parse(spec_text), n, s, s1, s2, trials, seed, cap, threads};
            if (n < 1) throw DomainError("simulate: need n >= 1");
            progress(out, "simulating " + std::to_string(trials) + " trials, seed " + std::to_string(seed));
            const auto rep = two ? mc::simulate_two(cfg) : mc::simulate_single(cfg);
            json j = rep;
            j["spec"] = spec_text;
            j["n"] = n;
            j["seed"] = std::to_string(seed);
            j["cap"] = std::to_string(cfg.cap());
            if (!target_mean.empty()) {
                const Rational tm = rational_arg(target_mean);
                j["target_mean"] = to_string(tm);
                j["mean_within_3se"] = mc::SimReport::within(rep.mean, tm.get_d(), rep.stderr_mean);
            }
            if (!target_win.empty()) {
                const Rational tw = rational_arg(target_win);
                j["target_win"] = to_string(tw);
                j["win_within_3se"] = mc::SimReport::within(rep.win_rate, tw.get_d(), rep.stderr_win);
            }
            emit(out, j);
        } else if (*ver) {
            const auto families = verify::Family::parse(vfamily);
            const auto rep = verify::run(families, nmax, rational_arg(p_text), data_dir,
                                         [&](const std::string& m) { progress(out, m); });
            json cases = json::array();
            for (const auto& c : rep.cases)
                cases.push_back({{"family", c.family}, {"n", c.n}, {"check", c.check}, {"pass", c.pass}, {"detail", c.detail}});
            emit(out, json{{"family", vfamily}, {"nmax", nmax}, {"p", p_text}, {"cases", cases},
                           {"failures", rep.failures()}, {"ok", rep.ok()}});
            if (!out.quiet) {
                std::cerr << "family            n  check                           result\n";
                for (const auto& c : rep.cases) {
                    std::string fam = c.family, chk = c.check;
                    fam.resize(16, ' ');
                    chk.resize(32, ' ');
                    std::cerr << fam << std::setw(3) << c.n << "  " << chk << (c.pass ? "pass" : "FAIL") << "\n";
                }
            }
            return rep.ok() ? kOk : kMismatch;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMismatch;
    }
    return kOk;
}
