#pragma once

#include "hadpos/errors.hpp"
#include "hadpos/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace hadpos {

using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<std::vector<Rational>>;

inline RatMatrix rat_zeros(std::size_t r, std::size_t c) {
    return RatMatrix(r, RatVector(c, Rational(0)));
}

inline Rational rat_det(RatMatrix m) {
    const std::size_t n = m.size();
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

// Solve A x = b exactly; nullopt when A is singular.
inline std::optional<RatVector> rat_solve(RatMatrix a, RatVector b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            std::swap(b[piv], b[col]);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    RatVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

// Exact nullspace basis of an r x c matrix (not orthonormalized).
inline std::vector<RatVector> rat_nullspace(RatMatrix m) {
    if (m.empty()) return {};
    const std::size_t rows = m.size(), cols = m[0].size();
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t piv = row;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[row]);
        Rational d = m[row][col];
        for (std::size_t c = col; c < cols; ++c) m[row][c] /= d;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<RatVector> basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        RatVector v(cols, Rational(0));
        v[free_col] = 1;
        for (std::size_t r = 0; r < pivot_col.size(); ++r)
            v[pivot_col[r]] = -m[r][free_col];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::size_t rat_rank(RatMatrix m) {
    if (m.empty()) return 0;
    return m[0].size() - rat_nullspace(std::move(m)).size();
}

inline RatVector rat_matvec(const RatMatrix& a, const RatVector& x) {
    RatVector y(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            y[i] += a[i][j] * x[j];
    return y;
}

inline Rational rat_dot(const RatVector& a, const RatVector& b) {
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace hadpos
