#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "p1orbit/embedding.hpp"

namespace p1orbit {

/// Direction of the multiplicative flow: Positive follows t -> 0 limits,
/// Negative follows t -> infinity.
enum class Direction { Positive, Negative };

inline std::string to_string(Direction d) {
    return d == Direction::Positive ? "positive" : "negative";
}

/// The k-th power of the generating one-parameter subgroup; it acts on the
/// projective line by z -> t^{2k} z. k = +1 is the generator.
struct OneParamWeight {
    int k = 1;
};

template <ExactField K>
P1Point<K> coordinate_limit(OneParamWeight w, const P1Point<K>& x, Direction dir) {
    if (w.k == 0) throw precondition_error("one-parameter weight must be nonzero");
    const bool contracting = (dir == Direction::Positive) == (w.k > 0);
    const K& ex = x.first();
    if (contracting)  // t^{2k} z -> 0 for finite z, infinity stays
        return x.is_infinity() ? P1Point<K>::infinity(ex) : P1Point<K>::zero(ex);
    return x.is_zero() ? P1Point<K>::zero(ex) : P1Point<K>::infinity(ex);
}

/// Coordinatewise flow limit; always a tuple with entries in {0, infinity}.
template <ExactField K>
PointTuple<K> limit(OneParamWeight w, const PointTuple<K>& q, Direction dir) {
    require_valid_tuple(q);
    PointTuple<K> out;
    out.reserve(q.size());
    for (const auto& x : q) out.push_back(coordinate_limit(w, x, dir));
    return out;
}

// ---------------------------------------------------------------------------
// Fixed points

/// The four shapes of torus-fixed tuples in X(p): the source 0^r, the sink
/// infinity^r, A(i) = zeros with infinity in slot i, and B(i) = infinities
/// with zero in slot i.
struct FixedPointLabel {
    enum class Kind { Source, A, B, Sink };
    Kind kind = Kind::Source;
    int index = 0;  // 1-based slot for A/B, 0 otherwise

    static FixedPointLabel source() { return {Kind::Source, 0}; }
    static FixedPointLabel sink() { return {Kind::Sink, 0}; }
    static FixedPointLabel a(int i) { return {Kind::A, i}; }
    static FixedPointLabel b(int i) { return {Kind::B, i}; }

    bool operator==(const FixedPointLabel&) const = default;
    auto operator<=>(const FixedPointLabel&) const = default;
};

inline std::string to_string(const FixedPointLabel& l) {
    switch (l.kind) {
        case FixedPointLabel::Kind::Source: return "source";
        case FixedPointLabel::Kind::Sink: return "sink";
        case FixedPointLabel::Kind::A: return "A(" + std::to_string(l.index) + ")";
        case FixedPointLabel::Kind::B: return "B(" + std::to_string(l.index) + ")";
    }
    throw internal_error("unreachable fixed point kind");
}

/// Matches a tuple against the four fixed shapes; empty for anything else.
template <ExactField K>
std::optional<FixedPointLabel> classify_fixed_tuple(const PointTuple<K>& t) {
    int zeros = 0, infs = 0, last_zero = 0, last_inf = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i].is_zero()) { ++zeros; last_zero = static_cast<int>(i) + 1; }
        else if (t[i].is_infinity()) { ++infs; last_inf = static_cast<int>(i) + 1; }
        else return std::nullopt;
    }
    const int r = static_cast<int>(t.size());
    if (zeros == r) return FixedPointLabel::source();
    if (infs == r) return FixedPointLabel::sink();
    if (infs == 1) return FixedPointLabel::a(last_inf);
    if (zeros == 1) return FixedPointLabel::b(last_zero);
    return std::nullopt;
}

/// The tuple named by a label.
template <ExactField K>
PointTuple<K> fixed_tuple(const FixedPointLabel& l, int r, const K& exemplar) {
    auto zero = P1Point<K>::zero(exemplar), inf = P1Point<K>::infinity(exemplar);
    bool zero_background = l.kind == FixedPointLabel::Kind::Source || l.kind == FixedPointLabel::Kind::A;
    PointTuple<K> t(static_cast<std::size_t>(r), zero_background ? zero : inf);
    if (l.kind == FixedPointLabel::Kind::A) t[static_cast<std::size_t>(l.index) - 1] = inf;
    if (l.kind == FixedPointLabel::Kind::B) t[static_cast<std::size_t>(l.index) - 1] = zero;
    return t;
}

/// All tuples of {0, infinity}^r lying in X(p), labeled; found by exhaustive
/// enumeration against the membership test, in the order source, A(1..r),
/// B(1..r), sink.
inline std::vector<std::pair<FixedPointLabel, PointTuple<Rational>>> fixed_points(
    const Embedding& X) {
    const int r = X.r();
    const Rational ex(0);
    auto zero = P1Point<Rational>::zero(ex), inf = P1Point<Rational>::infinity(ex);
    std::vector<std::pair<FixedPointLabel, PointTuple<Rational>>> found;
    for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
        PointTuple<Rational> t;
        for (int i = 0; i < r; ++i) t.push_back((mask >> i) & 1 ? inf : zero);
        if (!contains(X, t)) continue;
        auto label = classify_fixed_tuple(t);
        if (!label) throw internal_error("torus-fixed tuple in X has an unexpected shape");
        found.emplace_back(*label, std::move(t));
    }
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return found;
}

// ---------------------------------------------------------------------------
// Strata

enum class StratumTag { Open, Curve, Divisor, Point };

inline std::string to_string(StratumTag t) {
    switch (t) {
        case StratumTag::Open: return "open";
        case StratumTag::Curve: return "curve";
        case StratumTag::Divisor: return "divisor";
        case StratumTag::Point: return "point";
    }
    throw internal_error("unreachable stratum tag");
}

struct StratumDescriptor {
    Direction direction = Direction::Positive;
    FixedPointLabel at;
    StratumTag tag = StratumTag::Point;
    int dimension = 0;
};

constexpr int kVarietyDimension = 3;

/// Per-prime census of X(F_q): every rational point of the orbit plus the
/// boundary, classified by the fixed point its limit reaches in each
/// direction. Keys are (label, direction).
using StratumCountTable = std::map<std::pair<FixedPointLabel, Direction>, std::uint64_t>;

inline StratumCountTable ff_stratum_counts(const Embedding& X, std::uint32_t q) {
    Fp::check_modulus(q);
    const int r = X.r();
    const std::uint32_t inf_code = q;  // points of P^1(F_q) valued in 0..q-1, q for infinity

    std::vector<std::pair<std::uint32_t, std::uint32_t>> p;  // homogeneous pairs mod q
    for (const auto& pt : X.normalized()) {
        if (pt.is_infinity()) p.emplace_back(1, 0);
        else p.emplace_back(reduce_mod(pt.value(), q).value(), 1);
    }
    {
        std::set<std::uint32_t> distinct;
        for (auto [a, b] : p) distinct.insert(b == 0 ? inf_code : a);
        if (distinct.size() != p.size())
            throw precondition_error("bad reduction: marked points collide mod " + std::to_string(q));
    }

    std::vector<std::uint32_t> inv_table(q, 0);
    for (std::uint32_t v = 1; v < q; ++v) inv_table[v] = Fp(v, q).inverse().value();
    auto inv_mod = [&](std::uint32_t v) { return inv_table[v]; };
    auto encode = [&](const std::vector<std::uint32_t>& coords) {
        std::uint64_t code = 0;
        for (std::uint32_t c : coords) code = code * (q + 1) + c;
        return code;
    };

    std::set<std::uint64_t> points;
    std::vector<std::uint32_t> coords(static_cast<std::size_t>(r));
    // orbit part: images of the marked tuple under every invertible matrix
    for (std::uint32_t a = 0; a < q; ++a)
        for (std::uint32_t b = 0; b < q; ++b)
            for (std::uint32_t c = 0; c < q; ++c)
                for (std::uint32_t d = 0; d < q; ++d) {
                    if ((std::uint64_t(a) * d + std::uint64_t(q) * q - std::uint64_t(b) * c % q) % q == 0)
                        continue;
                    for (int i = 0; i < r; ++i) {
                        std::uint64_t na = (std::uint64_t(a) * p[i].first + std::uint64_t(b) * p[i].second) % q;
                        std::uint64_t nb = (std::uint64_t(c) * p[i].first + std::uint64_t(d) * p[i].second) % q;
                        coords[static_cast<std::size_t>(i)] =
                            nb == 0 ? inf_code
                                    : static_cast<std::uint32_t>(na * inv_mod(static_cast<std::uint32_t>(nb)) % q);
                    }
                    points.insert(encode(coords));
                }
    // boundary part: all coordinates equal except possibly one slot
    for (int i = 0; i < r; ++i)
        for (std::uint32_t x = 0; x <= q; ++x)
            for (std::uint32_t y = 0; y <= q; ++y) {
                std::fill(coords.begin(), coords.end(), x);
                coords[static_cast<std::size_t>(i)] = y;
                points.insert(encode(coords));
            }

    StratumCountTable table;
    for (std::uint64_t code : points) {
        std::vector<std::uint32_t> v(static_cast<std::size_t>(r));
        std::uint64_t rest = code;
        for (int i = r - 1; i >= 0; --i) {
            v[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(rest % (q + 1));
            rest /= (q + 1);
        }
        int zeros = 0, infs = 0;
        int a_zero = 0, a_inf = 0, a_nonzero = 0, a_noninf = 0;  // 1-based slots
        for (int i = 0; i < r; ++i) {
            if (v[static_cast<std::size_t>(i)] == 0) { ++zeros; a_zero = i + 1; }
            else a_nonzero = i + 1;
            if (v[static_cast<std::size_t>(i)] == inf_code) { ++infs; a_inf = i + 1; }
            else a_noninf = i + 1;
        }
        // positive limit: infinity exactly where the coordinate is infinite
        FixedPointLabel pos;
        if (infs == 0) pos = FixedPointLabel::source();
        else if (infs == r) pos = FixedPointLabel::sink();
        else if (infs == 1) pos = FixedPointLabel::a(a_inf);
        else if (infs == r - 1) pos = FixedPointLabel::b(a_noninf);
        else throw internal_error("X(F_q) census met a tuple outside the boundary shapes");
        // negative limit: zero exactly where the coordinate is zero
        FixedPointLabel neg;
        if (zeros == 0) neg = FixedPointLabel::sink();
        else if (zeros == r) neg = FixedPointLabel::source();
        else if (zeros == 1) neg = FixedPointLabel::b(a_zero);
        else if (zeros == r - 1) neg = FixedPointLabel::a(a_nonzero);
        else throw internal_error("X(F_q) census met a tuple outside the boundary shapes");
        table[{pos, Direction::Positive}] += 1;
        table[{neg, Direction::Negative}] += 1;
    }
    return table;
}

/// The first two primes >= 5 over which the normalized marked points stay
/// pairwise distinct.
inline std::pair<std::uint32_t, std::uint32_t> good_strata_primes(const Embedding& X) {
    std::vector<std::uint32_t> good;
    for (std::uint32_t q = 5; q < 100 && good.size() < 2; ++q) {
        if (!is_prime(q)) continue;
        try {
            ff_stratum_counts(X, q);  // cheap for small q; throws on bad reduction
            good.push_back(q);
        } catch (const precondition_error&) {
        }
    }
    if (good.size() < 2)
        throw precondition_error("no primes below 100 give good reduction for the marked points");
    return {good[0], good[1]};
}

/// Growth exponent in [0, 3] best matching two exact counts: the d with
/// (q2/q1)^d closest to n2/n1 in ratio.
inline int fit_dimension(std::uint64_t n1, std::uint32_t q1, std::uint64_t n2, std::uint32_t q2) {
    if (n1 == 0 || n2 == 0) throw precondition_error("cannot fit a dimension to a zero count");
    const Rational ratio{BigInt(n2), BigInt(n1)};
    int best = 0;
    Rational best_dist(0);
    for (int d = 0; d <= kVarietyDimension; ++d) {
        Rational target = 1;
        for (int k = 0; k < d; ++k) target *= Rational(q2, q1);
        Rational dist = ratio > target ? ratio / target : target / ratio;
        if (d == 0 || dist < best_dist) {
            best = d;
            best_dist = dist;
        }
    }
    return best;
}

/// Sampled (positive, negative) stratum dimensions at each A(i); these are
/// measured from point counts over two primes, not quoted from a closed form.
inline std::vector<std::pair<int, int>> sampled_a_dims(const Embedding& X) {
    auto [q1, q2] = good_strata_primes(X);
    auto t1 = ff_stratum_counts(X, q1);
    auto t2 = ff_stratum_counts(X, q2);
    std::vector<std::pair<int, int>> dims;
    for (int i = 1; i <= X.r(); ++i) {
        auto key_pos = std::make_pair(FixedPointLabel::a(i), Direction::Positive);
        auto key_neg = std::make_pair(FixedPointLabel::a(i), Direction::Negative);
        dims.emplace_back(fit_dimension(t1[key_pos], q1, t2[key_pos], q2),
                          fit_dimension(t1[key_neg], q1, t2[key_neg], q2));
    }
    return dims;
}

/// Stratum of a point of X: computes the flow limit, matches it to a fixed
/// point, and reports the closed-form description. Dimensions at A(i) come
/// from sampled_a_dims. A negative weight swaps the roles of the two
/// directions.
inline StratumDescriptor stratum_of(const Embedding& X, const PointTuple<Rational>& q,
                                    Direction dir, OneParamWeight w = OneParamWeight{1}) {
    if (w.k == 0) throw precondition_error("one-parameter weight must be nonzero");
    if (!contains(X, q)) throw precondition_error("point not in X");
    auto l = limit(w, q, dir);
    auto label = classify_fixed_tuple(l);
    if (!label || !contains(X, l)) throw internal_error("flow limit left the variety");

    StratumDescriptor out;
    out.direction = dir;
    out.at = *label;
    const bool pos = (dir == Direction::Positive) == (w.k > 0);
    switch (label->kind) {
        case FixedPointLabel::Kind::Source:
            out.tag = pos ? StratumTag::Open : StratumTag::Point;
            out.dimension = pos ? kVarietyDimension : 0;
            break;
        case FixedPointLabel::Kind::Sink:
            out.tag = pos ? StratumTag::Point : StratumTag::Open;
            out.dimension = pos ? 0 : kVarietyDimension;
            break;
        case FixedPointLabel::Kind::B:
            out.tag = pos ? StratumTag::Curve : StratumTag::Divisor;
            out.dimension = pos ? 1 : 2;
            break;
        case FixedPointLabel::Kind::A: {
            out.tag = StratumTag::Point;
            auto dims = sampled_a_dims(X)[static_cast<std::size_t>(label->index) - 1];
            out.dimension = pos ? dims.first : dims.second;
            break;
        }
    }
    return out;
}

struct StratumRow {
    FixedPointLabel at;
    StratumTag tag_positive = StratumTag::Point;
    int dim_positive = 0;
    StratumTag tag_negative = StratumTag::Point;
    int dim_negative = 0;
};

/// The full table of strata over all fixed points. Every row must satisfy
/// dim X <= dim+ + dim- (the fixed points are isolated).
inline std::vector<StratumRow> strata_summary(const Embedding& X) {
    const int r = X.r();
    auto a_dims = sampled_a_dims(X);
    std::vector<StratumRow> rows;
    rows.push_back({FixedPointLabel::source(), StratumTag::Open, kVarietyDimension,
                    StratumTag::Point, 0});
    for (int i = 1; i <= r; ++i)
        rows.push_back({FixedPointLabel::a(i), StratumTag::Point,
                        a_dims[static_cast<std::size_t>(i) - 1].first, StratumTag::Point,
                        a_dims[static_cast<std::size_t>(i) - 1].second});
    for (int i = 1; i <= r; ++i)
        rows.push_back({FixedPointLabel::b(i), StratumTag::Curve, 1, StratumTag::Divisor, 2});
    rows.push_back({FixedPointLabel::sink(), StratumTag::Point, 0, StratumTag::Open,
                    kVarietyDimension});
    for (const auto& row : rows)
        if (row.dim_positive + row.dim_negative < kVarietyDimension)
            throw internal_error("stratum dimensions at " + to_string(row.at) +
                                 " violate the fixed-point inequality");
    return rows;
}

} // namespace p1orbit
