#pragma once

#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "pilegame/error.hpp"
#include "pilegame/rational.hpp"

// Reference values shipped in the data directory: one exact rational per
// line, '#' starts a comment line.

namespace pilegame::fixtures {

inline constexpr const char* kWbarPm1Half = "wbar_pm1_half.txt";
inline constexpr const char* kY1Straight = "y1_straight.txt";
inline constexpr const char* kY1Central = "y1_central.txt";
inline constexpr const char* kZ1Straight = "z1_straight.txt";
inline constexpr const char* kZ1Central = "z1_central.txt";

/// $PILEGAME_DATA_DIR if set, else the directory baked in at build time.
inline std::string default_data_dir() {
    if (const char* env = std::getenv("PILEGAME_DATA_DIR"); env && *env) return env;
#ifdef PILEGAME_DATA_DIR
    return PILEGAME_DATA_DIR;
#else
    return "data";
#endif
}

inline std::vector<Rational> load_rationals(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open fixture file " + path);
    std::vector<Rational> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t\r");
        out.push_back(parse_rational(std::string_view(line).substr(first, last - first + 1)));
    }
    return out;
}

inline std::vector<Rational> load(const std::string& name, const std::string& dir = default_data_dir()) {
    return load_rationals(dir + "/" + name);
}

}  // namespace pilegame::fixtures
