#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "p1orbit/fp.hpp"
#include "p1orbit/polynomial.hpp"
#include "p1orbit/projline.hpp"

namespace p1orbit {

/// The orbit closure X(p_1, ..., p_r) of r pairwise distinct marked points of
/// the projective line under the diagonal Moebius action, together with the
/// canonical representative obtained by moving (p_1, p_2, p_3) to
/// (inf, 0, 1). Immutable after construction.
class Embedding {
public:
    explicit Embedding(PointTuple<Rational> points)
        : points_(std::move(points)),
          normalizer_(Moebius<Rational>::identity(Rational(0))) {
        if (points_.size() < 3) throw precondition_error("an embedding needs r >= 3 points");
        for (std::size_t i = 0; i < points_.size(); ++i)
            for (std::size_t j = i + 1; j < points_.size(); ++j)
                if (points_[i] == points_[j])
                    throw precondition_error("marked points must be pairwise distinct (slots " +
                                             std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                             " coincide)");
        Rational ex(0);
        normalizer_ = find_moebius<Rational>(
            {points_[0], points_[1], points_[2]},
            {P1Point<Rational>::infinity(ex), P1Point<Rational>::zero(ex),
             P1Point<Rational>::from_value(Rational(1))});
        normalized_ = normalizer_(points_);
    }

    int r() const { return static_cast<int>(points_.size()); }
    const PointTuple<Rational>& points() const { return points_; }
    const PointTuple<Rational>& normalized() const { return normalized_; }
    const Moebius<Rational>& normalizer() const { return normalizer_; }

    /// Normalized coordinate p_i as a scalar, for i >= 2 (1-based slot).
    const Rational& normalized_value(int slot) const {
        if (slot < 2 || slot > r()) throw precondition_error("slot out of range");
        return normalized_[static_cast<std::size_t>(slot) - 1].value();
    }

    /// Recorded geometry: the variety is singular along the diagonal once r >= 4.
    bool singular_along_diagonal() const { return r() >= 4; }

    bool operator==(const Embedding& o) const { return points_ == o.points_; }

private:
    PointTuple<Rational> points_;
    PointTuple<Rational> normalized_;
    Moebius<Rational> normalizer_;
};

inline Embedding normalize(PointTuple<Rational> points) { return Embedding(std::move(points)); }

// ---------------------------------------------------------------------------
// Membership

struct Membership {
    enum class Branch { OpenOrbit, Boundary, Diagonal, None };
    Branch branch = Branch::None;
    int component = 0;  // 1-based boundary slot when branch == Boundary
    std::optional<Moebius<Rational>> witness;

    bool member() const { return branch != Branch::None; }
};

/// Decides membership of a tuple in X(p). A tuple belongs iff it has all
/// coordinates but (at most) one equal, or it is the image of the marked
/// tuple under the Moebius matching the first three coordinates.
inline Membership classify_membership(const Embedding& X, const PointTuple<Rational>& q) {
    const int r = X.r();
    if (static_cast<int>(q.size()) != r)
        throw precondition_error("tuple length " + std::to_string(q.size()) +
                                 " does not match r = " + std::to_string(r));
    Membership out;
    bool all_equal = true;
    for (int i = 1; i < r; ++i)
        if (q[i] != q[0]) { all_equal = false; break; }
    if (all_equal) {
        out.branch = Membership::Branch::Diagonal;
        return out;
    }
    for (int i = 0; i < r; ++i) {
        bool rest_equal = true;
        const P1Point<Rational>* common = nullptr;
        for (int j = 0; j < r && rest_equal; ++j) {
            if (j == i) continue;
            if (!common) common = &q[j];
            else if (q[j] != *common) rest_equal = false;
        }
        if (rest_equal) {
            out.branch = Membership::Branch::Boundary;
            out.component = i + 1;
            return out;
        }
    }
    bool distinct = true;
    for (int i = 0; i < r && distinct; ++i)
        for (int j = i + 1; j < r; ++j)
            if (q[i] == q[j]) { distinct = false; break; }
    if (!distinct) return out;
    const auto& p = X.points();
    auto g = find_moebius<Rational>({p[0], p[1], p[2]}, {q[0], q[1], q[2]});
    for (int i = 3; i < r; ++i)
        if (g(p[i]) != q[i]) return out;
    out.branch = Membership::Branch::OpenOrbit;
    out.witness = g;
    return out;
}

inline bool contains(const Embedding& X, const PointTuple<Rational>& q) {
    return classify_membership(X, q).member();
}

// ---------------------------------------------------------------------------
// Determinantal equations of the affine slice

/// Scales a rational-coefficient polynomial by the unique positive factor
/// making its coefficients integers with content one.
inline Polynomial<Rational> primitive_integer_form(const Polynomial<Rational>& p) {
    if (p.is_zero()) return p;
    BigInt lcm_den(1), gcd_num(0);
    for (const auto& [e, c] : p.terms()) lcm_den = lcm(lcm_den, denominator(c));
    for (const auto& [e, c] : p.terms()) {
        BigInt scaled = numerator(c) * (lcm_den / denominator(c));
        gcd_num = gcd(gcd_num, abs(scaled));
    }
    return p * Rational(lcm_den, gcd_num);
}

/// The 2 x (r-2) matrix over Q[x_2..x_r] whose top row is p_i x_i and bottom
/// row is x_i - x_2 (columns i = 3..r, normalized coordinates), together with
/// all of its 2x2 minors. For r = 3 the minor list is empty.
class MinorsSystem {
public:
    MinorsSystem(int r, std::vector<Polynomial<Rational>> top,
                 std::vector<Polynomial<Rational>> bottom)
        : r_(r), top_(std::move(top)), bottom_(std::move(bottom)) {
        const std::size_t cols = top_.size();
        for (std::size_t i = 0; i < cols; ++i)
            for (std::size_t j = i + 1; j < cols; ++j) {
                minors_.push_back(top_[i] * bottom_[j] - top_[j] * bottom_[i]);
                columns_.emplace_back(static_cast<int>(i) + 3, static_cast<int>(j) + 3);
            }
    }

    int r() const { return r_; }
    std::size_t minor_count() const { return minors_.size(); }
    const std::vector<Polynomial<Rational>>& top_row() const { return top_; }
    const std::vector<Polynomial<Rational>>& bottom_row() const { return bottom_; }
    const std::vector<Polynomial<Rational>>& minors() const { return minors_; }
    std::pair<int, int> minor_columns(std::size_t idx) const { return columns_.at(idx); }

    /// Variable i of the polynomials is x_{i+2}.
    std::vector<std::string> variable_names() const {
        std::vector<std::string> names;
        for (int k = 2; k <= r_; ++k) names.push_back("x" + std::to_string(k));
        return names;
    }

    /// One line per minor, integer-primitive coefficients, fixed term order.
    std::string to_text() const {
        auto names = variable_names();
        std::string out;
        for (std::size_t i = 0; i < minors_.size(); ++i) {
            auto [a, b] = columns_[i];
            out += "minor(" + std::to_string(a) + "," + std::to_string(b) +
                   "): " + polynomial_to_text(primitive_integer_form(minors_[i]), names) + "\n";
        }
        return out;
    }

private:
    int r_;
    std::vector<Polynomial<Rational>> top_, bottom_;
    std::vector<Polynomial<Rational>> minors_;
    std::vector<std::pair<int, int>> columns_;
};

inline MinorsSystem minors_system(const Embedding& X) {
    const int r = X.r();
    const std::size_t nvars = static_cast<std::size_t>(r) - 1;  // x_2 .. x_r
    const Rational one(1);
    std::vector<Polynomial<Rational>> top, bottom;
    auto x = [&](int k) {  // variable x_k, 2 <= k <= r
        return Polynomial<Rational>::variable(nvars, static_cast<std::size_t>(k) - 2, one);
    };
    for (int i = 3; i <= r; ++i) {
        top.push_back(x(i) * X.normalized_value(i));
        bottom.push_back(x(i) - x(2));
    }
    return MinorsSystem(r, std::move(top), std::move(bottom));
}

/// Coordinates (x_2, ..., x_r) of the slice point with parameters (t, u):
/// x_2 = 1/(tu) and x_i = 1/(p_i t^2 + tu).
inline std::vector<Rational> parametrize_S_minus(const Embedding& X, const Rational& t,
                                                 const Rational& u) {
    if (t * u == 0)
        throw precondition_error("parametrization denominator vanishes at slot 2 (tu = 0)");
    std::vector<Rational> out;
    out.push_back(Rational(1) / (t * u));
    for (int i = 3; i <= X.r(); ++i) {
        Rational den = X.normalized_value(i) * t * t + t * u;
        if (den == 0)
            throw precondition_error("parametrization denominator vanishes at slot " +
                                     std::to_string(i));
        out.push_back(Rational(1) / den);
    }
    return out;
}

struct VerifyReport {
    int r = 0;
    bool parametrization_ok = false;
    bool diagonal_ok = false;
    bool coordinate_lines_ok = false;
    std::vector<std::string> failures;

    bool ok() const { return parametrization_ok && diagonal_ok && coordinate_lines_ok; }
};

/// Symbolic verification that every minor vanishes identically on the
/// parametrized slice (as a polynomial identity in t, u after clearing
/// denominators) and on the diagonal and coordinate lines. All residuals are
/// exact; a nonzero one would indicate a broken implementation. Trivially
/// true for r = 3, where the system is empty.
inline VerifyReport verify_equations(const Embedding& X) {
    VerifyReport report;
    report.r = X.r();
    const Rational one(1);
    auto system = minors_system(X);
    auto names = system.variable_names();

    // x_2 -> 1/(tu), x_i -> 1/(p_i t^2 + tu), in Q(t, u)
    {
        Polynomial<Rational> t = Polynomial<Rational>::variable(2, 0, one);
        Polynomial<Rational> u = Polynomial<Rational>::variable(2, 1, one);
        auto numer_one = Polynomial<Rational>::constant(2, one);
        std::vector<RationalFunction<Rational>> values;
        values.emplace_back(numer_one, t * u);
        for (int i = 3; i <= X.r(); ++i)
            values.emplace_back(numer_one, t * t * X.normalized_value(i) + t * u);
        report.parametrization_ok = true;
        for (std::size_t m = 0; m < system.minor_count(); ++m) {
            auto image = substitute(system.minors()[m], values, one);
            if (!image.is_zero()) {
                report.parametrization_ok = false;
                auto [a, b] = system.minor_columns(m);
                report.failures.push_back("nonzero residual of minor(" + std::to_string(a) + "," +
                                          std::to_string(b) + ") on the parametrization: " +
                                          polynomial_to_text(image.num, {"t", "u"}));
            }
        }
    }

    auto check_line = [&](const std::vector<RationalFunction<Rational>>& values,
                          const std::string& what, bool& flag) {
        flag = true;
        for (std::size_t m = 0; m < system.minor_count(); ++m) {
            auto image = substitute(system.minors()[m], values, one);
            if (!image.is_zero()) {
                flag = false;
                auto [a, b] = system.minor_columns(m);
                report.failures.push_back("nonzero residual of minor(" + std::to_string(a) + "," +
                                          std::to_string(b) + ") on " + what);
            }
        }
    };

    // the diagonal x_2 = x_3 = ... = x_r
    {
        auto s = RationalFunction<Rational>::from_polynomial(
            Polynomial<Rational>::variable(1, 0, one), one);
        std::vector<RationalFunction<Rational>> values(static_cast<std::size_t>(X.r()) - 1, s);
        check_line(values, "the diagonal", report.diagonal_ok);
    }

    // the r-1 coordinate lines: only x_k nonzero
    report.coordinate_lines_ok = true;
    for (int k = 2; k <= X.r(); ++k) {
        auto zero = RationalFunction<Rational>::from_polynomial(Polynomial<Rational>(1), one);
        auto s = RationalFunction<Rational>::from_polynomial(
            Polynomial<Rational>::variable(1, 0, one), one);
        std::vector<RationalFunction<Rational>> values(static_cast<std::size_t>(X.r()) - 1, zero);
        values[static_cast<std::size_t>(k) - 2] = s;
        bool flag = true;
        check_line(values, "coordinate line x" + std::to_string(k), flag);
        report.coordinate_lines_ok = report.coordinate_lines_ok && flag;
    }
    return report;
}

// ---------------------------------------------------------------------------
// Finite-field point counts

namespace detail {

inline std::uint32_t quadratic_nonresidue(std::uint32_t q) {
    // Euler's criterion; q odd prime.
    auto pow_mod = [&](std::uint64_t base, std::uint64_t exp) {
        std::uint64_t acc = 1;
        base %= q;
        while (exp) {
            if (exp & 1) acc = acc * base % q;
            base = base * base % q;
            exp >>= 1;
        }
        return static_cast<std::uint32_t>(acc);
    };
    for (std::uint32_t n = 2; n < q; ++n)
        if (pow_mod(n, (q - 1) / 2) == q - 1) return n;
    throw internal_error("no quadratic nonresidue found mod " + std::to_string(q));
}

/// Arithmetic in F_{q^2} = F_q(w), w^2 = ns; elements are (a + b w).
struct Fq2 {
    std::uint32_t a = 0, b = 0;
};

class Fq2Arith {
public:
    explicit Fq2Arith(std::uint32_t q) : q_(q), ns_(quadratic_nonresidue(q)) {}

    std::uint32_t q() const { return q_; }
    bool is_zero(Fq2 x) const { return x.a == 0 && x.b == 0; }
    bool in_base(Fq2 x) const { return x.b == 0; }

    Fq2 add(Fq2 x, Fq2 y) const { return {addq(x.a, y.a), addq(x.b, y.b)}; }
    Fq2 mul(Fq2 x, Fq2 y) const {
        std::uint64_t a = std::uint64_t(x.a) * y.a + std::uint64_t(x.b) * y.b % q_ * ns_;
        std::uint64_t b = std::uint64_t(x.a) * y.b + std::uint64_t(x.b) * y.a;
        return {static_cast<std::uint32_t>(a % q_), static_cast<std::uint32_t>(b % q_)};
    }
    Fq2 scale(std::uint32_t c, Fq2 x) const {
        return {static_cast<std::uint32_t>(std::uint64_t(c) * x.a % q_),
                static_cast<std::uint32_t>(std::uint64_t(c) * x.b % q_)};
    }
    Fq2 inverse(Fq2 x) const {
        // (a + bw)^-1 = (a - bw) / (a^2 - ns b^2)
        std::uint64_t norm =
            (std::uint64_t(x.a) * x.a + std::uint64_t(q_) * q_ -
             std::uint64_t(x.b) * x.b % q_ * ns_ % q_) % q_;
        std::uint32_t inv = Fp(static_cast<std::int64_t>(norm), q_).inverse().value();
        return {static_cast<std::uint32_t>(std::uint64_t(x.a) * inv % q_),
                static_cast<std::uint32_t>(std::uint64_t(x.b ? q_ - x.b : 0) * inv % q_)};
    }

private:
    std::uint32_t addq(std::uint32_t x, std::uint32_t y) const {
        std::uint32_t s = x + y;
        return s >= q_ ? s - q_ : s;
    }
    std::uint32_t q_, ns_;
};

} // namespace detail

struct FiniteFieldCount {
    std::uint32_t q = 0;
    std::uint64_t n_variety = 0;       // solutions of all minors in F_q^{r-1}
    std::uint64_t n_constructive = 0;  // parametrized points + diagonal + coordinate lines
};

/// Reduction of the normalized coordinates p_3..p_r mod q; requires pairwise
/// distinct nonzero residues.
inline std::vector<std::uint32_t> reduce_embedding_mod(const Embedding& X, std::uint32_t q) {
    std::vector<std::uint32_t> out;
    for (int i = 3; i <= X.r(); ++i) out.push_back(reduce_mod(X.normalized_value(i), q).value());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] == 0)
            throw precondition_error("bad reduction: p_" + std::to_string(i + 3) +
                                     " is zero mod " + std::to_string(q));
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if (out[i] == out[j])
                throw precondition_error("bad reduction: p_" + std::to_string(i + 3) + " and p_" +
                                         std::to_string(j + 3) + " collide mod " +
                                         std::to_string(q));
    }
    return out;
}

/// Exhaustive double count over F_q: solutions of the minor equations on one
/// side, and on the other the points of F_q^{r-1} reached by the (t, u)
/// parametrization together with the diagonal and the coordinate lines.
/// A parameter pair producing a rational point has t^2 and tu in F_q, so
/// searching (t, u) over the quadratic extension is exhaustive.
inline FiniteFieldCount count_points_ff(const Embedding& X, std::uint32_t q) {
    Fp::check_modulus(q);
    if (q == 2)
        throw precondition_error("count_points_ff needs an odd prime (quadratic extension)");
    const int r = X.r();
    const auto p = reduce_embedding_mod(X, q);  // p[i] = p_{i+3} mod q

    std::uint64_t total = 1;
    for (int i = 0; i < r - 1; ++i) {
        total *= q;
        if (total > 100'000'000ULL)
            throw precondition_error("enumeration guard exceeded: q^{r-1} > 10^8");
    }

    FiniteFieldCount out;
    out.q = q;

    // Variety side: evaluate both matrix rows, then every 2x2 minor.
    const std::size_t n = static_cast<std::size_t>(r) - 1;  // coordinates x_2..x_r
    std::vector<std::uint32_t> x(n, 0);
    std::vector<std::uint64_t> top(n - 1), bottom(n - 1);
    for (std::uint64_t it = 0; it < total; ++it) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            top[i] = std::uint64_t(p[i]) * x[i + 1] % q;
            bottom[i] = (x[i + 1] + q - x[0]) % q;
        }
        bool all_vanish = true;
        for (std::size_t i = 0; i + 1 < n && all_vanish; ++i)
            for (std::size_t j = i + 1; j + 1 < n; ++j)
                if (top[i] * bottom[j] % q != top[j] * bottom[i] % q) {
                    all_vanish = false;
                    break;
                }
        if (all_vanish) ++out.n_variety;
        for (std::size_t i = 0; i < n; ++i) {  // odometer
            if (++x[i] < q) break;
            x[i] = 0;
        }
    }

    // Constructive side, deduplicated via base-q encoding of the tuple.
    std::set<std::uint64_t> seen;
    auto encode = [&](const std::vector<std::uint32_t>& v) {
        std::uint64_t code = 0;
        for (std::uint32_t c : v) code = code * q + c;
        return code;
    };

    detail::Fq2Arith F(q);
    std::vector<detail::Fq2> z(n);
    std::vector<std::uint32_t> point(n);
    for (std::uint32_t ta = 0; ta < q; ++ta)
        for (std::uint32_t tb = 0; tb < q; ++tb) {
            detail::Fq2 t{ta, tb};
            if (F.is_zero(t)) continue;
            detail::Fq2 t2 = F.mul(t, t);
            for (std::uint32_t ua = 0; ua < q; ++ua)
                for (std::uint32_t ub = 0; ub < q; ++ub) {
                    detail::Fq2 u{ua, ub};
                    if (F.is_zero(u)) continue;
                    detail::Fq2 tu = F.mul(t, u);
                    z[0] = tu;
                    bool admissible = true;
                    for (std::size_t i = 0; i + 1 < n; ++i) {
                        z[i + 1] = F.add(F.scale(p[i], t2), tu);
                        if (F.is_zero(z[i + 1])) { admissible = false; break; }
                    }
                    if (!admissible) continue;
                    bool rational = true;
                    for (std::size_t i = 0; i < n; ++i) {
                        detail::Fq2 xi = F.inverse(z[i]);
                        if (!F.in_base(xi)) { rational = false; break; }
                        point[i] = xi.a;
                    }
                    if (rational) seen.insert(encode(point));
                }
        }
    for (std::uint32_t c = 0; c < q; ++c)  // diagonal
        seen.insert(encode(std::vector<std::uint32_t>(n, c)));
    for (std::size_t k = 0; k < n; ++k)  // coordinate lines
        for (std::uint32_t s = 0; s < q; ++s) {
            std::vector<std::uint32_t> v(n, 0);
            v[k] = s;
            seen.insert(encode(v));
        }
    out.n_constructive = seen.size();
    return out;
}

// ---------------------------------------------------------------------------
// Classification up to permutation and Moebius action

struct IsomorphismWitness {
    std::vector<int> permutation;  // 0-based: point i of the first embedding maps to slot permutation[i]
    Moebius<Rational> moebius;
};

/// Searches for a Moebius transformation g and permutation sigma with
/// g . p1[i] = p2[sigma(i)] by matching the first three points onto every
/// ordered triple of target slots and checking the rest.
inline std::optional<IsomorphismWitness> are_isomorphic(const Embedding& x1, const Embedding& x2) {
    const int r = x1.r();
    if (r != x2.r()) return std::nullopt;
    const auto& p1 = x1.points();
    const auto& p2 = x2.points();
    for (int j1 = 0; j1 < r; ++j1)
        for (int j2 = 0; j2 < r; ++j2)
            for (int j3 = 0; j3 < r; ++j3) {
                if (j1 == j2 || j1 == j3 || j2 == j3) continue;
                auto g = find_moebius<Rational>({p1[0], p1[1], p1[2]}, {p2[j1], p2[j2], p2[j3]});
                std::vector<int> perm(static_cast<std::size_t>(r), -1);
                std::vector<bool> used(static_cast<std::size_t>(r), false);
                perm[0] = j1;
                perm[1] = j2;
                perm[2] = j3;
                used[j1] = used[j2] = used[j3] = true;
                bool full = true;
                for (int i = 3; i < r && full; ++i) {
                    auto image = g(p1[i]);
                    full = false;
                    for (int k = 0; k < r; ++k)
                        if (!used[k] && p2[k] == image) {
                            perm[i] = k;
                            used[k] = true;
                            full = true;
                            break;
                        }
                }
                if (full) return IsomorphismWitness{std::move(perm), g};
            }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Construction from a binary form

struct LinearFactor {
    Rational a, b;     // the form a*x + b*y
    int multiplicity;  // >= 1
};

/// A product of pairwise non-proportional linear forms with multiplicities.
class BinaryForm {
public:
    explicit BinaryForm(std::vector<LinearFactor> factors) : factors_(std::move(factors)) {
        for (const auto& f : factors_) {
            if (f.a == 0 && f.b == 0) throw precondition_error("zero linear factor");
            if (f.multiplicity < 1) throw precondition_error("factor multiplicities must be >= 1");
        }
        for (std::size_t i = 0; i < factors_.size(); ++i)
            for (std::size_t j = i + 1; j < factors_.size(); ++j)
                if (factors_[i].a * factors_[j].b - factors_[i].b * factors_[j].a == 0)
                    throw precondition_error("proportional linear factors (positions " +
                                             std::to_string(i + 1) + " and " +
                                             std::to_string(j + 1) + ")");
    }

    const std::vector<LinearFactor>& factors() const { return factors_; }
    int degree() const {
        int d = 0;
        for (const auto& f : factors_) d += f.multiplicity;
        return d;
    }

private:
    std::vector<LinearFactor> factors_;
};

/// The embedding on the distinct roots [-b : a] of the form's linear factors;
/// multiplicities are discarded. Fewer than three distinct roots leave an
/// infinite stabilizer and are rejected.
inline Embedding embedding_from_form(const BinaryForm& f) {
    if (f.factors().size() < 3)
        throw precondition_error("a binary form needs at least 3 distinct roots, got " +
                                 std::to_string(f.factors().size()));
    PointTuple<Rational> roots;
    for (const auto& factor : f.factors()) roots.emplace_back(-factor.b, factor.a);
    return Embedding(std::move(roots));
}

} // namespace p1orbit
