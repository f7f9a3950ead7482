#pragma once

#include <cstdint>
#include <string>

#include "p1orbit/errors.hpp"
#include "p1orbit/rational.hpp"

namespace p1orbit {

inline bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Element of the prime field F_q. The modulus travels with the value, and
/// arithmetic between different moduli is rejected.
class Fp {
public:
    Fp(std::int64_t value, std::uint32_t q) : q_(q) {
        check_modulus(q);
        std::int64_t m = value % static_cast<std::int64_t>(q);
        if (m < 0) m += q;
        v_ = static_cast<std::uint32_t>(m);
    }

    static void check_modulus(std::uint32_t q) {
        if (q > 65536 || !is_prime(q))
            throw precondition_error("modulus must be a prime <= 2^16, got " + std::to_string(q));
    }

    std::uint32_t value() const { return v_; }
    std::uint32_t modulus() const { return q_; }
    bool is_zero() const { return v_ == 0; }

    Fp operator+(const Fp& o) const { return raw((v_ + std::uint64_t(o.check(*this).v_)) % q_, q_); }
    Fp operator-(const Fp& o) const { return raw((v_ + std::uint64_t(q_) - o.check(*this).v_) % q_, q_); }
    Fp operator*(const Fp& o) const { return raw((std::uint64_t(v_) * o.check(*this).v_) % q_, q_); }
    Fp operator/(const Fp& o) const { return *this * o.inverse(); }
    Fp operator-() const { return raw(v_ == 0 ? 0 : q_ - v_, q_); }

    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }

    bool operator==(const Fp& o) const { return v_ == o.check(*this).v_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    Fp inverse() const {
        if (v_ == 0) throw precondition_error("division by zero in F_" + std::to_string(q_));
        // extended Euclid on (v, q)
        std::int64_t a = v_, b = q_, x0 = 1, x1 = 0;
        while (b != 0) {
            std::int64_t t = a / b;
            a -= t * b;
            std::swap(a, b);
            x0 -= t * x1;
            std::swap(x0, x1);
        }
        x0 %= static_cast<std::int64_t>(q_);
        if (x0 < 0) x0 += q_;
        return raw(static_cast<std::uint32_t>(x0), q_);
    }

private:
    const Fp& check(const Fp& other) const {
        if (q_ != other.q_)
            throw precondition_error("mixed prime fields F_" + std::to_string(other.q_) +
                                     " and F_" + std::to_string(q_));
        return *this;
    }
    static Fp raw(std::uint32_t v, std::uint32_t q) {
        Fp r(0, q);
        r.v_ = v;
        return r;
    }

    std::uint32_t v_;
    std::uint32_t q_;
};

/// Image of an exact rational in F_q; the denominator must be a unit mod q.
inline Fp reduce_mod(const Rational& x, std::uint32_t q) {
    BigInt n = numerator(x) % q, d = denominator(x) % q;
    if (d == 0)
        throw precondition_error("bad reduction: denominator of " + format_rational(x) +
                                 " vanishes mod " + std::to_string(q));
    return Fp(static_cast<std::int64_t>(n), q) / Fp(static_cast<std::int64_t>(d), q);
}

} // namespace p1orbit
