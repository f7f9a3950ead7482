#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "p1orbit/errors.hpp"

namespace p1orbit {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
using Rational = boost::multiprecision::cpp_rational;

inline bool is_integer(const Rational& x) { return denominator(x) == 1; }

/// Renders as "a/b", or just "a" when the denominator is 1.
inline std::string format_rational(const Rational& x) {
    if (is_integer(x)) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

/// Accepts an optionally signed integer "a" or fraction "a/b" with b > 0.
/// Unreduced input is canonicalized, so printing always round-trips.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] { throw parse_error("invalid rational: '" + std::string(text) + "'"); };
    auto digits = [&](std::string_view s) {
        if (s.empty()) fail();
        for (char c : s)
            if (c < '0' || c > '9') fail();
    };
    std::string_view num = text, den;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
        digits(den);
    }
    if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
        digits(num.substr(1));
    } else {
        digits(num);
    }
    BigInt n{std::string(num)};
    if (den.empty()) return Rational(n);
    BigInt d{std::string(den)};
    if (d == 0) throw parse_error("zero denominator: '" + std::string(text) + "'");
    return Rational(n, d);
}

} // namespace p1orbit
