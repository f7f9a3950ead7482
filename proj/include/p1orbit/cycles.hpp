#pragma once

#include <string>
#include <vector>

#include "p1orbit/linalg.hpp"
#include "p1orbit/rational.hpp"

namespace p1orbit {

/// Divisor class on X(p) in the basis D_1..D_r of pull-backs of 0 under the
/// r projections.
struct DivisorClass {
    std::vector<Rational> d;

    explicit DivisorClass(std::vector<Rational> coeffs) : d(std::move(coeffs)) {}
    int r() const { return static_cast<int>(d.size()); }
    bool operator==(const DivisorClass&) const = default;

    DivisorClass operator+(const DivisorClass& o) const {
        if (r() != o.r()) throw precondition_error("divisor class dimension mismatch");
        auto out = d;
        for (int i = 0; i < r(); ++i) out[static_cast<std::size_t>(i)] += o.d[static_cast<std::size_t>(i)];
        return DivisorClass(std::move(out));
    }
    DivisorClass operator-() const {
        auto out = d;
        for (auto& x : out) x = -x;
        return DivisorClass(std::move(out));
    }
    DivisorClass operator*(const Rational& c) const {
        auto out = d;
        for (auto& x : out) x *= c;
        return DivisorClass(std::move(out));
    }
};

/// Curve class in the basis C_1..C_r of the boundary lines.
struct CurveClass {
    std::vector<Rational> c;

    explicit CurveClass(std::vector<Rational> coeffs) : c(std::move(coeffs)) {}
    int r() const { return static_cast<int>(c.size()); }
    bool operator==(const CurveClass&) const = default;
};

inline bool is_integral(const std::vector<Rational>& v) {
    for (const auto& x : v)
        if (!is_integer(x)) return false;
    return true;
}

/// Intersection number (D . C) in the dual bases, where (D_i . C_j) is the
/// identity matrix: the i-th projection maps C_i isomorphically to the line
/// and sends C_j (j != i) to a point away from 0.
inline Rational pair(const DivisorClass& D, const CurveClass& C) {
    if (D.r() != C.r()) throw precondition_error("pairing of classes with different r");
    Rational acc(0);
    for (int i = 0; i < D.r(); ++i)
        acc += D.d[static_cast<std::size_t>(i)] * C.c[static_cast<std::size_t>(i)];
    return acc;
}

/// Classes of the r boundary divisors in the D-basis, solved from the
/// relations saying that the divisor of each rational function z_i - z_j is
/// trivial: -D_i - D_j + sum over k outside {i, j} of the k-th boundary
/// class = 0. Row k of the result is the class of the k-th boundary divisor.
inline Matrix<Rational> boundary_classes(int r) {
    if (r < 3) throw precondition_error("boundary classes need r >= 3");
    const std::size_t n = static_cast<std::size_t>(r);
    Matrix<Rational> sys;
    std::vector<std::vector<Rational>> rhs;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            for (int l = 0; l < r; ++l) {
                std::vector<Rational> row(n * n, Rational(0));
                for (int k = 0; k < r; ++k) {
                    if (k == i || k == j) continue;
                    row[static_cast<std::size_t>(k) * n + static_cast<std::size_t>(l)] = 1;
                }
                sys.push_back(std::move(row));
                rhs.push_back({Rational((l == i ? 1 : 0) + (l == j ? 1 : 0))});
            }
    Matrix<Rational> flat = linalg::solve_unique(sys, rhs);
    Matrix<Rational> out(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) out[k][l] = flat[k * n + l][0];
    return out;
}

/// Class of the i-th boundary divisor (1-based).
inline DivisorClass boundary_class(int r, int i) {
    if (i < 1 || i > r) throw precondition_error("boundary index out of range");
    return DivisorClass(boundary_classes(r)[static_cast<std::size_t>(i) - 1]);
}

/// The canonical class, minus the sum of the boundary divisor classes.
inline DivisorClass canonical_class(int r) {
    auto rows = boundary_classes(r);
    std::vector<Rational> sum(static_cast<std::size_t>(r), Rational(0));
    for (const auto& row : rows)
        for (std::size_t l = 0; l < row.size(); ++l) sum[l] += row[l];
    for (auto& x : sum) x = -x;
    return DivisorClass(std::move(sum));
}

inline bool is_nef(const DivisorClass& D) {
    for (const auto& x : D.d)
        if (x < 0) return false;
    return true;
}

inline bool is_ample(const DivisorClass& D) {
    for (const auto& x : D.d)
        if (x <= 0) return false;
    return true;
}

inline bool is_effective_curve(const CurveClass& C) {
    for (const auto& x : C.c)
        if (x < 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Simplicial cones

/// Full-dimensional simplicial cone: n linearly independent generators in
/// Q^n, giving unique decompositions.
class SimplicialCone {
public:
    SimplicialCone(int n, std::vector<std::vector<Rational>> generators, std::string basis = "")
        : n_(n), generators_(std::move(generators)), basis_(std::move(basis)) {
        if (n_ < 1) throw precondition_error("cone dimension must be positive");
        if (static_cast<int>(generators_.size()) != n_)
            throw precondition_error("a simplicial cone in Q^n needs exactly n generators");
        for (const auto& g : generators_)
            if (static_cast<int>(g.size()) != n_)
                throw precondition_error("cone generator has wrong length");
        if (linalg::rank(generators_) != static_cast<std::size_t>(n_))
            throw precondition_error("cone generators are rank-deficient");
    }

    int n() const { return n_; }
    const std::vector<std::vector<Rational>>& generators() const { return generators_; }
    const std::string& basis_name() const { return basis_; }

private:
    int n_;
    std::vector<std::vector<Rational>> generators_;
    std::string basis_;
};

/// Positive rescaling to the primitive integer vector on the same ray.
inline std::vector<Rational> primitive_vector(const std::vector<Rational>& v) {
    BigInt lcm_den(1), gcd_num(0);
    for (const auto& x : v) lcm_den = lcm(lcm_den, denominator(x));
    for (const auto& x : v) gcd_num = gcd(gcd_num, abs(numerator(x) * (lcm_den / denominator(x))));
    if (gcd_num == 0) throw precondition_error("zero vector has no primitive form");
    std::vector<Rational> out = v;
    Rational scale(lcm_den, gcd_num);
    for (auto& x : out) x *= scale;
    return out;
}

/// Canonical form: primitive integer generators (positive scaling only, so
/// every ray is preserved), sorted lexicographically.
inline SimplicialCone canonicalized(const SimplicialCone& cone) {
    std::vector<std::vector<Rational>> gens;
    gens.reserve(cone.generators().size());
    for (const auto& g : cone.generators()) gens.push_back(primitive_vector(g));
    std::sort(gens.begin(), gens.end());
    return SimplicialCone(cone.n(), std::move(gens), cone.basis_name());
}

inline bool same_cone(const SimplicialCone& a, const SimplicialCone& b) {
    return a.n() == b.n() &&
           canonicalized(a).generators() == canonicalized(b).generators();
}

/// Dual simplicial cone: the rows of the inverse of the matrix whose columns
/// are the generators, i.e. the unique w_j with <w_j, v_i> = delta_ij, in
/// canonical form.
inline SimplicialCone dual_cone(const SimplicialCone& cone) {
    const std::size_t n = static_cast<std::size_t>(cone.n());
    Matrix<Rational> by_columns(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) by_columns[l][i] = cone.generators()[i][l];
    Matrix<Rational> inv = linalg::inverse(by_columns);
    std::string dual_basis = cone.basis_name() == "C" ? "D" : cone.basis_name() == "D" ? "C" : "";
    return canonicalized(SimplicialCone(cone.n(), std::move(inv), dual_basis));
}

struct DecomposeResult {
    std::vector<Rational> coefficients;  // unique solution of (generators) . lambda = v
    bool inside = false;                 // all coefficients nonnegative
};

/// Exact decomposition of v over the cone generators; membership holds iff
/// every coefficient is nonnegative.
inline DecomposeResult decompose(const SimplicialCone& cone, const std::vector<Rational>& v) {
    const std::size_t n = static_cast<std::size_t>(cone.n());
    if (v.size() != n) throw precondition_error("decompose: vector has wrong dimension");
    Matrix<Rational> by_columns(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) by_columns[l][i] = cone.generators()[i][l];
    DecomposeResult out;
    out.coefficients = linalg::solve_unique(by_columns, v);
    out.inside = true;
    for (const auto& x : out.coefficients)
        if (x < 0) { out.inside = false; break; }
    return out;
}

inline std::vector<std::vector<Rational>> orthant_generators(int r) {
    std::vector<std::vector<Rational>> gens(static_cast<std::size_t>(r),
                                            std::vector<Rational>(static_cast<std::size_t>(r), Rational(0)));
    for (std::size_t i = 0; i < static_cast<std::size_t>(r); ++i) gens[i][i] = 1;
    return gens;
}

/// The nef cone in the D-basis: the nonnegative orthant.
inline SimplicialCone nef_cone(int r) {
    if (r < 3) throw precondition_error("nef cone needs r >= 3");
    return SimplicialCone(r, orthant_generators(r), "D");
}

/// The cone of effective one-cycles in the C-basis: the nonnegative orthant.
inline SimplicialCone curve_cone(int r) {
    if (r < 3) throw precondition_error("curve cone needs r >= 3");
    return SimplicialCone(r, orthant_generators(r), "C");
}

} // namespace p1orbit
