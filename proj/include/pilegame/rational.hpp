#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "pilegame/error.hpp"

namespace pilegame {

/// Arbitrary-precision integer.
using BigInt = mpz_class;

/// Arbitrary-precision rational; GMP keeps it canonical (coprime, positive
/// denominator, zero as 0/1) as long as it is built through the helpers
/// below or through arithmetic.
using Rational = mpq_class;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(BigInt(num), BigInt(den));
}

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace detail

/// Parses "a", "-a", "+a" or "a/b" (b > 0). Decimal notation is rejected.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] { return ParseError("invalid rational literal '" + std::string(text) + "'"); };
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) throw fail();
    BigInt n(std::string(num), 10);
    BigInt d(std::string(den), 10);
    if (d == 0) throw fail();
    if (negative) n = -n;
    return make_rational(n, d);
}

/// "a" for integers, "a/b" otherwise.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline std::string to_string(const BigInt& z) { return z.get_str(); }

inline Rational pow(const Rational& base, long exponent) {
    if (exponent < 0) {
        if (base == 0) throw DivisionByZero("zero raised to a negative power");
        return pow(Rational(1) / base, -exponent);
    }
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return make_rational(num, den);
}

inline BigInt binomial(long n, long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace pilegame
