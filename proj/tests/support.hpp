#pragma once

// Shared deterministic samplers and independent oracles for the test suites.
// Oracles here deliberately avoid the library's own code paths.

#include <array>
#include <optional>
#include <random>

#include "p1orbit/embedding.hpp"
#include "p1orbit/projline.hpp"

namespace testsupport {

using p1orbit::Moebius;
using p1orbit::P1Point;
using p1orbit::PointTuple;
using p1orbit::Rational;

using Rng = std::mt19937_64;

inline Rational small_rational(Rng& rng) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
    return Rational(num(rng), den(rng));
}

inline Rational nonzero_small_rational(Rng& rng) {
    for (;;) {
        Rational x = small_rational(rng);
        if (x != 0) return x;
    }
}

/// Random point, infinite roughly once in ten draws.
inline P1Point<Rational> random_point(Rng& rng) {
    std::uniform_int_distribution<int> pick(0, 9);
    if (pick(rng) == 0) return P1Point<Rational>::infinity(Rational(0));
    return P1Point<Rational>::from_value(small_rational(rng));
}

inline Moebius<Rational> random_moebius(Rng& rng) {
    for (;;) {
        Rational a = small_rational(rng), b = small_rational(rng);
        Rational c = small_rational(rng), d = small_rational(rng);
        if (a * d - b * c != 0) return Moebius<Rational>(a, b, c, d);
    }
}

inline std::array<P1Point<Rational>, 3> random_distinct_triple(Rng& rng) {
    for (;;) {
        auto a = random_point(rng), b = random_point(rng), c = random_point(rng);
        if (a != b && a != c && b != c) return {a, b, c};
    }
}

/// Independent cross-ratio oracle on homogeneous pairs, written directly
/// against raw rationals: cr = (|a c| |b d|) / (|a d| |b c|) as a pair
/// (numerator, denominator). Empty when 0/0.
inline std::optional<std::pair<Rational, Rational>> oracle_cross_ratio(
    const std::array<std::pair<Rational, Rational>, 4>& pts) {
    auto det = [](const std::pair<Rational, Rational>& x, const std::pair<Rational, Rational>& y) {
        return x.first * y.second - x.second * y.first;
    };
    Rational num = det(pts[0], pts[2]) * det(pts[1], pts[3]);
    Rational den = det(pts[0], pts[3]) * det(pts[1], pts[2]);
    if (num == 0 && den == 0) return std::nullopt;
    return std::make_pair(num, den);
}

inline std::pair<Rational, Rational> homogeneous(const P1Point<Rational>& x) {
    return {x.first(), x.second()};
}

/// A random point of the open orbit of X, as the image of a random Moebius.
inline PointTuple<Rational> random_orbit_point(Rng& rng, const p1orbit::Embedding& X) {
    return random_moebius(rng)(X.points());
}

/// A random orbit point with every coordinate finite and nonzero.
inline PointTuple<Rational> random_generic_orbit_point(Rng& rng, const p1orbit::Embedding& X) {
    for (;;) {
        auto q = random_orbit_point(rng, X);
        bool generic = true;
        for (const auto& x : q)
            if (x.is_infinity() || x.is_zero()) { generic = false; break; }
        if (generic) return q;
    }
}

} // namespace testsupport
