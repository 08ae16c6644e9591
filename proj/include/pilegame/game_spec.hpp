#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "pilegame/error.hpp"
#include "pilegame/rational.hpp"

namespace pilegame {

/// One allowed move: add `step` chips (possibly negative) with probability `prob`.
struct Choice {
    long step;
    Rational prob;

    friend bool operator==(const Choice&, const Choice&) = default;
};

/// The choice set of a pile game with boundary.
///
/// Probabilities are strictly positive and sum to exactly one, steps are
/// distinct and at least one step is positive, so every game terminates
/// almost surely.
class GameSpec {
public:
    explicit GameSpec(std::vector<Choice> choices) : choices_(std::move(choices)) { validate(); }

    /// R = {up, -down} with P(up) = p.
    static GameSpec two_step(long up, long down_step, const Rational& p) {
        return GameSpec({{up, p}, {down_step, Rational(1) - p}});
    }

    static GameSpec plus_one_minus_one(const Rational& p) { return two_step(1, -1, p); }
    static GameSpec plus_one_minus_u(const Rational& p, long u) { return two_step(1, -u, p); }
    static GameSpec plus_two_minus_one(const Rational& p) { return two_step(2, -1, p); }

    /// Parses "1:1/2,-1:1/2". Probabilities must be exact rational literals.
    static GameSpec parse(std::string_view text) {
        std::vector<Choice> out;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t comma = text.find(',', pos);
            std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
            std::size_t colon = item.find(':');
            if (colon == std::string_view::npos)
                throw ParseError("game spec item '" + std::string(item) + "' is not step:prob");
            std::string_view step_text = item.substr(0, colon);
            Rational step = parse_rational(step_text);
            if (step.get_den() != 1 || !step.get_num().fits_slong_p())
                throw ParseError("game spec step '" + std::string(step_text) + "' is not an integer");
            out.push_back({step.get_num().get_si(), parse_rational(item.substr(colon + 1))});
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
        try {
            return GameSpec(std::move(out));
        } catch (const DomainError& e) {
            throw ParseError(e.what());
        }
    }

    const std::vector<Choice>& choices() const { return choices_; }

    long max_step() const {
        long m = choices_.front().step;
        for (const auto& c : choices_) m = std::max(m, c.step);
        return m;
    }

    /// Text form accepted by parse().
    std::string to_string() const {
        std::string s;
        for (const auto& c : choices_) {
            if (!s.empty()) s += ",";
            s += std::to_string(c.step) + ":" + pilegame::to_string(c.prob);
        }
        return s;
    }

    /// Where a player at `s` (< n) lands after moving by `step`: values >= n
    /// mean the target was reached; negative totals are clamped to zero.
    static long next_state(long s, long step, long n) {
        long t = s + step;
        if (t >= n) return t;
        return std::max(0L, t);
    }

    friend bool operator==(const GameSpec&, const GameSpec&) = default;

private:
    void validate() const {
        if (choices_.empty()) throw DomainError("game spec needs at least one choice");
        Rational total = 0;
        bool has_positive = false;
        for (std::size_t i = 0; i < choices_.size(); ++i) {
            if (choices_[i].prob <= 0) throw DomainError("choice probabilities must be positive");
            total += choices_[i].prob;
            has_positive = has_positive || choices_[i].step > 0;
            for (std::size_t j = 0; j < i; ++j)
                if (choices_[j].step == choices_[i].step) throw DomainError("choice steps must be distinct");
        }
        if (total != 1) throw DomainError("choice probabilities must sum to 1");
        if (!has_positive) throw DomainError("at least one step must be positive");
    }

    std::vector<Choice> choices_;
};

}  // namespace pilegame
