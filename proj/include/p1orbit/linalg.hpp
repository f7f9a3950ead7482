#pragma once

#include <cstddef>
#include <vector>

#include "p1orbit/field.hpp"

namespace p1orbit {

/// Dense matrix over an exact field, rows of equal length.
template <ExactField K>
using Matrix = std::vector<std::vector<K>>;

namespace linalg {

/// In-place reduced row echelon form by exact Gauss-Jordan elimination.
/// Returns the pivot column of every pivot row, in order.
template <ExactField K>
std::vector<std::size_t> rref(Matrix<K>& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pivot = row;
        while (pivot < rows && FieldTraits<K>::is_zero(m[pivot][col])) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[row], m[pivot]);
        K inv = FieldTraits<K>::one(m[row][col]) / m[row][col];
        for (auto& x : m[row]) x = x * inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || FieldTraits<K>::is_zero(m[r][col])) continue;
            K factor = m[r][col];
            for (std::size_t c = 0; c < cols; ++c) m[r][c] = m[r][c] - factor * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

/// Solves A X = B where B holds one right-hand side per column. Requires the
/// solution to exist and be unique; anything else is a precondition failure.
template <ExactField K>
Matrix<K> solve_unique(const Matrix<K>& a, const Matrix<K>& b) {
    if (a.empty() || b.size() != a.size()) throw precondition_error("solve: shape mismatch");
    const std::size_t n = a[0].size(), k = b[0].size();
    Matrix<K> aug = a;
    for (std::size_t r = 0; r < a.size(); ++r)
        aug[r].insert(aug[r].end(), b[r].begin(), b[r].end());
    auto pivots = rref(aug);
    std::size_t rank_a = 0;
    for (std::size_t p : pivots) {
        if (p < n) ++rank_a;
        else throw precondition_error("solve: inconsistent linear system");
    }
    if (rank_a < n) throw precondition_error("solve: underdetermined linear system");
    K zero = FieldTraits<K>::zero(a[0][0]);
    Matrix<K> x(n, std::vector<K>(k, zero));
    for (std::size_t r = 0; r < rank_a; ++r)
        for (std::size_t c = 0; c < k; ++c) x[pivots[r]][c] = aug[r][n + c];
    return x;
}

template <ExactField K>
std::vector<K> solve_unique(const Matrix<K>& a, const std::vector<K>& rhs) {
    Matrix<K> b;
    b.reserve(rhs.size());
    for (const auto& v : rhs) b.push_back({v});
    Matrix<K> x = solve_unique(a, b);
    std::vector<K> out;
    out.reserve(x.size());
    for (auto& row : x) out.push_back(row[0]);
    return out;
}

template <ExactField K>
Matrix<K> identity(std::size_t n, const K& exemplar) {
    Matrix<K> m(n, std::vector<K>(n, FieldTraits<K>::zero(exemplar)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = FieldTraits<K>::one(exemplar);
    return m;
}

template <ExactField K>
Matrix<K> inverse(const Matrix<K>& a) {
    if (a.empty() || a.size() != a[0].size()) throw precondition_error("inverse: not square");
    try {
        return solve_unique(a, identity(a.size(), a[0][0]));
    } catch (const precondition_error&) {
        throw precondition_error("inverse: matrix is singular");
    }
}

template <ExactField K>
std::size_t rank(Matrix<K> m) {
    return rref(m).size();
}

} // namespace linalg
} // namespace p1orbit
