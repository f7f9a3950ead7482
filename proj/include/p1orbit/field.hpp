#pragma once

#include <concepts>
#include <string>

#include "p1orbit/fp.hpp"
#include "p1orbit/rational.hpp"

namespace p1orbit {

/// Uniform access to the two base fields. The exemplar argument exists so
/// that constants can be produced in the right field when the field carries
/// runtime state (the modulus of F_q); for the rationals it is ignored.
template <class K>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
    static bool same_field(const Rational&, const Rational&) { return true; }
    static Rational zero(const Rational&) { return Rational(0); }
    static Rational one(const Rational&) { return Rational(1); }
    static bool is_zero(const Rational& x) { return x == 0; }
    static std::string to_string(const Rational& x) { return format_rational(x); }
};

template <>
struct FieldTraits<Fp> {
    static bool same_field(const Fp& a, const Fp& b) { return a.modulus() == b.modulus(); }
    static Fp zero(const Fp& ex) { return Fp(0, ex.modulus()); }
    static Fp one(const Fp& ex) { return Fp(1, ex.modulus()); }
    static bool is_zero(const Fp& x) { return x.is_zero(); }
    static std::string to_string(const Fp& x) { return std::to_string(x.value()); }
};

template <class K>
concept ExactField = requires(const K& a, const K& b) {
    { a + b } -> std::convertible_to<K>;
    { a - b } -> std::convertible_to<K>;
    { a * b } -> std::convertible_to<K>;
    { a / b } -> std::convertible_to<K>;
    { -a } -> std::convertible_to<K>;
    { a == b } -> std::convertible_to<bool>;
    { FieldTraits<K>::same_field(a, b) } -> std::convertible_to<bool>;
    { FieldTraits<K>::zero(a) } -> std::convertible_to<K>;
    { FieldTraits<K>::one(a) } -> std::convertible_to<K>;
    { FieldTraits<K>::is_zero(a) } -> std::convertible_to<bool>;
    { FieldTraits<K>::to_string(a) } -> std::convertible_to<std::string>;
};

template <ExactField K>
void require_same_field(const K& a, const K& b) {
    if (!FieldTraits<K>::same_field(a, b))
        throw precondition_error("mixed-field arithmetic is not allowed");
}

} // namespace p1orbit
