#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "p1orbit/field.hpp"

namespace p1orbit {

/// A point of the projective line over an exact field, held as a homogeneous
/// pair [a : b] in canonical form: b = 1 for affine points, and (1, 0) for
/// the point at infinity. Two points are equal iff their canonical forms are.
template <ExactField K>
class P1Point {
public:
    P1Point(K a, K b) : a_(std::move(a)), b_(std::move(b)) {
        require_same_field(a_, b_);
        if (FieldTraits<K>::is_zero(a_) && FieldTraits<K>::is_zero(b_))
            throw precondition_error("(0, 0) is not a point of the projective line");
        if (!FieldTraits<K>::is_zero(b_)) {
            a_ = a_ / b_;
            b_ = FieldTraits<K>::one(b_);
        } else {
            a_ = FieldTraits<K>::one(a_);
        }
    }

    static P1Point from_value(K z) {
        K one = FieldTraits<K>::one(z);
        return P1Point(std::move(z), std::move(one));
    }
    static P1Point zero(const K& exemplar) {
        return P1Point(FieldTraits<K>::zero(exemplar), FieldTraits<K>::one(exemplar));
    }
    static P1Point infinity(const K& exemplar) {
        return P1Point(FieldTraits<K>::one(exemplar), FieldTraits<K>::zero(exemplar));
    }

    bool is_infinity() const { return FieldTraits<K>::is_zero(b_); }
    bool is_zero() const { return FieldTraits<K>::is_zero(a_); }

    /// First and second homogeneous coordinate of the canonical form.
    const K& first() const { return a_; }
    const K& second() const { return b_; }

    /// Affine value a/b; only defined away from infinity.
    const K& value() const {
        if (is_infinity()) throw precondition_error("the point at infinity has no affine value");
        return a_;
    }

    bool operator==(const P1Point& o) const {
        require_same_field(a_, o.a_);
        return a_ == o.a_ && b_ == o.b_;
    }
    bool operator!=(const P1Point& o) const { return !(*this == o); }

private:
    K a_, b_;
};

/// det of the 2x2 matrix with columns x, y; zero iff the points coincide.
template <ExactField K>
K cross_det(const P1Point<K>& x, const P1Point<K>& y) {
    require_same_field(x.first(), y.first());
    return x.first() * y.second() - x.second() * y.first();
}

/// An element of PGL(2): an invertible 2x2 matrix up to scalar, stored with
/// the first nonzero entry in row-major order scaled to 1.
template <ExactField K>
class Moebius {
public:
    Moebius(K m11, K m12, K m21, K m22)
        : e_{std::move(m11), std::move(m12), std::move(m21), std::move(m22)} {
        require_same_field(e_[0], e_[1]);
        require_same_field(e_[0], e_[2]);
        require_same_field(e_[0], e_[3]);
        if (FieldTraits<K>::is_zero(e_[0] * e_[3] - e_[1] * e_[2]))
            throw precondition_error("Moebius matrix must have nonzero determinant");
        for (auto& x : e_) {
            if (!FieldTraits<K>::is_zero(x)) {
                K pivot = x;
                for (auto& y : e_) y = y / pivot;
                break;
            }
        }
    }

    static Moebius identity(const K& ex) {
        K z = FieldTraits<K>::zero(ex), o = FieldTraits<K>::one(ex);
        return Moebius(o, z, z, o);
    }

    const std::array<K, 4>& entries() const { return e_; }

    K det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }

    Moebius inverse() const { return Moebius(e_[3], -e_[1], -e_[2], e_[0]); }

    Moebius operator*(const Moebius& o) const {
        return Moebius(e_[0] * o.e_[0] + e_[1] * o.e_[2], e_[0] * o.e_[1] + e_[1] * o.e_[3],
                       e_[2] * o.e_[0] + e_[3] * o.e_[2], e_[2] * o.e_[1] + e_[3] * o.e_[3]);
    }

    /// Action on homogeneous coordinates: [a : b] -> [m11 a + m12 b : m21 a + m22 b].
    P1Point<K> operator()(const P1Point<K>& x) const {
        require_same_field(e_[0], x.first());
        return P1Point<K>(e_[0] * x.first() + e_[1] * x.second(),
                          e_[2] * x.first() + e_[3] * x.second());
    }

    /// Coordinatewise diagonal action on tuples.
    std::vector<P1Point<K>> operator()(const std::vector<P1Point<K>>& t) const {
        std::vector<P1Point<K>> out;
        out.reserve(t.size());
        for (const auto& x : t) out.push_back((*this)(x));
        return out;
    }

    bool operator==(const Moebius& o) const { return e_ == o.e_; }
    bool operator!=(const Moebius& o) const { return !(*this == o); }

private:
    std::array<K, 4> e_;
};

/// Cross-ratio ((a-c)(b-d)) / ((a-d)(b-c)), evaluated with homogeneous 2x2
/// determinants so that the usual limit conventions at infinity come out for
/// free. The result is a scalar-or-infinity, i.e. a point of the projective
/// line; it is infinite when the denominator alone vanishes. Degenerate 0/0
/// happens exactly when three of the four points coincide.
template <ExactField K>
P1Point<K> cross_ratio(const P1Point<K>& a, const P1Point<K>& b, const P1Point<K>& c,
                       const P1Point<K>& d) {
    K num = cross_det(a, c) * cross_det(b, d);
    K den = cross_det(a, d) * cross_det(b, c);
    if (FieldTraits<K>::is_zero(num) && FieldTraits<K>::is_zero(den))
        throw precondition_error("degenerate cross-ratio: three of the four points coincide");
    return P1Point<K>(std::move(num), std::move(den));
}

namespace detail {

/// The matrix sending (p, q, s) to (0, 1, infinity).
template <ExactField K>
Moebius<K> frame_to_standard(const P1Point<K>& p, const P1Point<K>& q, const P1Point<K>& s) {
    K k1 = cross_det(q, s);
    K k2 = cross_det(q, p);
    return Moebius<K>(k1 * p.second(), -(k1 * p.first()), k2 * s.second(), -(k2 * s.first()));
}

template <ExactField K>
void require_distinct3(const std::array<P1Point<K>, 3>& t, const char* which) {
    if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2])
        throw precondition_error(std::string("repeated point in ") + which + " triple");
}

} // namespace detail

/// The unique projective class carrying src[i] to dst[i] for i = 0, 1, 2.
template <ExactField K>
Moebius<K> find_moebius(const std::array<P1Point<K>, 3>& src, const std::array<P1Point<K>, 3>& dst) {
    detail::require_distinct3(src, "source");
    detail::require_distinct3(dst, "destination");
    return detail::frame_to_standard(dst[0], dst[1], dst[2]).inverse() *
           detail::frame_to_standard(src[0], src[1], src[2]);
}

/// An ordered tuple of r >= 3 points of the projective line over one field.
template <ExactField K>
using PointTuple = std::vector<P1Point<K>>;

template <ExactField K>
void require_valid_tuple(const PointTuple<K>& t) {
    if (t.size() < 3) throw precondition_error("point tuples need at least 3 coordinates");
    for (std::size_t i = 1; i < t.size(); ++i) require_same_field(t[0].first(), t[i].first());
}

// ---------------------------------------------------------------------------
// Textual format: "a/b" (reduced), plain integers, or "inf".

template <ExactField K>
std::string format_point(const P1Point<K>& x) {
    if (x.is_infinity()) return "inf";
    return FieldTraits<K>::to_string(x.value());
}

inline P1Point<Rational> parse_point(std::string_view text) {
    if (text == "inf") return P1Point<Rational>::infinity(Rational(0));
    return P1Point<Rational>::from_value(parse_rational(text));
}

template <ExactField K>
std::string format_tuple(const PointTuple<K>& t) {
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ",";
        out += format_point(t[i]);
    }
    return out;
}

inline PointTuple<Rational> parse_tuple(std::string_view text) {
    PointTuple<Rational> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        out.push_back(parse_point(text.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

} // namespace p1orbit
