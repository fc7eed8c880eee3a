#pragma once

#include "hadpos/errors.hpp"
#include "hadpos/partition.hpp"
#include "hadpos/rational.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace hadpos {

namespace detail {

template <typename F>
F field_pow(const F& base, long long e) {
    F r(1), b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Plain Gaussian elimination determinant over an exact field (or a
// well-conditioned float field at desk scale).
template <typename F>
F field_det(std::vector<std::vector<F>> m) {
    const std::size_t n = m.size();
    F det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == F(0)) ++piv;
        if (piv == n) return F(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == F(0)) continue;
            F f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

} // namespace detail

// e_j(x); e_0 = 1, zero for j > length(x) is an error per the contract.
template <typename F>
F elementary_symmetric(long long j, const std::vector<F>& x) {
    if (j < 0 || j > static_cast<long long>(x.size()))
        throw IndexOutOfRange("elementary_symmetric: j outside [0, length(x)]");
    // DP over prod (1 + x_i y), e[k] = coefficient of y^k.
    std::vector<F> e(static_cast<std::size_t>(j) + 1, F(0));
    e[0] = F(1);
    for (const F& xi : x)
        for (std::size_t k = e.size() - 1; k >= 1; --k)
            e[k] += xi * e[k - 1];
    return e[static_cast<std::size_t>(j)];
}

// prod_{i<j} (x_i - x_j), the determinant det(x_i^{N-j}).
template <typename F>
F vandermonde_det(const std::vector<F>& x) {
    F r(1);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            r *= x[i] - x[j];
    return r;
}

// e_k with out-of-range k giving zero (dual Jacobi-Trudi needs it).
template <typename F>
F elementary_symmetric_or_zero(long long k, const std::vector<F>& x) {
    if (k < 0 || k > static_cast<long long>(x.size())) return F(0);
    return elementary_symmetric(k, x);
}

// Dual Jacobi-Trudi: s_lam = det( e_{lam'_i - i + j} ), an l x l
// determinant with l = lam_1. Valid for any inputs, repeated or not.
template <typename F>
F schur_eval_jacobi_trudi(const Partition& lam, const std::vector<F>& x) {
    const long long l = lam.part(0);
    if (l == 0) return F(1);
    Partition conj = lam.conjugate();
    std::vector<std::vector<F>> m(static_cast<std::size_t>(l),
                                  std::vector<F>(static_cast<std::size_t>(l)));
    for (long long i = 1; i <= l; ++i)
        for (long long j = 1; j <= l; ++j)
            m[i - 1][j - 1] =
                elementary_symmetric_or_zero(conj.part(static_cast<std::size_t>(i - 1)) - i + j, x);
    return detail::field_det(std::move(m));
}

// Bialternant ratio det(x_i^{lam_j + N - j}) / det(x_i^{N - j});
// requires pairwise distinct points.
template <typename F>
F schur_eval_bialternant(const Partition& lam, const std::vector<F>& x) {
    const std::size_t n = x.size();
    std::vector<std::vector<F>> num(n, std::vector<F>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            num[i][j] = detail::field_pow(
                x[i], lam.part(j) + static_cast<long long>(n - 1 - j));
    return detail::field_det(std::move(num)) / vandermonde_det(x);
}

template <typename F>
bool pairwise_distinct(const std::vector<F>& x) {
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (x[i] == x[j]) return false;
    return true;
}

// s_lam(x_1, ..., x_N), exact. Bialternant when the points are
// distinct, dual Jacobi-Trudi otherwise (the ratio is 0/0 there).
inline Rational schur_eval(const Partition& lam, const std::vector<Rational>& x) {
    if (lam.num_nonzero() > x.size())
        throw Error("schur_eval: partition has more nonzero parts than variables");
    if (pairwise_distinct(x)) return schur_eval_bialternant(lam, x);
    return schur_eval_jacobi_trudi(lam, x);
}

// Complex-float entry point, used for modulus computations only.
inline std::complex<double> schur_eval(const Partition& lam,
                                       const std::vector<std::complex<double>>& x) {
    if (lam.num_nonzero() > x.size())
        throw Error("schur_eval: partition has more nonzero parts than variables");
    return schur_eval_jacobi_trudi(lam, x);
}

// Principal specialization s_lam(1, ..., 1) over N variables, via the
// product formula prod_{i<j} (lam_i - lam_j + j - i) / (j - i).
inline BigInt schur_ones(const Partition& lam, long long N) {
    if (N < static_cast<long long>(lam.num_nonzero()))
        throw Error("schur_ones: N below number of nonzero parts");
    Rational r(1);
    for (long long i = 1; i <= N; ++i)
        for (long long j = i + 1; j <= N; ++j)
            r *= Rational(lam.part(static_cast<std::size_t>(i - 1)) -
                              lam.part(static_cast<std::size_t>(j - 1)) + j - i,
                          j - i);
    return numerator(r); // always an integer
}

} // namespace hadpos
