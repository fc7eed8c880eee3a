#pragma once

#include "hadpos/errors.hpp"
#include "hadpos/matrix.hpp"
#include "hadpos/rational.hpp"
#include "hadpos/rational_linalg.hpp"
#include "hadpos/threshold.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace hadpos {

struct PencilResult {
    double value = 0.0;
    std::optional<CVector> optimizer; // unit vector in K(A)^perp, float mode only
};

// h_c[A] = sum_j c_j A^{o j}.
inline HermMatrix pencil_base(const HermMatrix& A, const CoeffVector& c) {
    const int n = A.dim();
    CMatrix out = CMatrix::Zero(n, n);
    CMatrix power = all_ones(n);
    for (std::size_t j = 0; j < c.c.size(); ++j) {
        out += to_double(c.c[j]) * power;
        power = power.cwiseProduct(A.a);
    }
    return HermMatrix(std::move(out));
}

struct KernelInclusionReport {
    bool contained = true;
    std::vector<double> residuals; // one per kernel vector of h
};

// ker h(A,B) subset ker g(A,B), with h = B o sum_{j<m} A^{o j} and
// g = B o A^{o M}. Always true in exact arithmetic; a false return is
// a tolerance failure and carries residuals.
inline KernelInclusionReport kernel_inclusion(const HermMatrix& A, const HermMatrix& B,
                                              long long m, long long M) {
    if (m < A.dim()) throw Error("kernel_inclusion: requires m >= N");
    const int n = A.dim();
    CMatrix hsum = CMatrix::Zero(n, n), power = all_ones(n);
    for (long long j = 0; j < m; ++j) {
        hsum += power;
        power = power.cwiseProduct(A.a);
    }
    HermMatrix h(B.a.cwiseProduct(hsum));
    HermMatrix g(B.a.cwiseProduct(hadamard_power(A, M).a));
    const double scale = std::max(1.0, g.max_abs());
    KernelInclusionReport rep;
    for (const auto& v : kernel_basis(h).vectors) {
        const double r = (g.a * v).norm();
        rep.residuals.push_back(r);
        if (r > 1e-8 * scale) rep.contained = false;
    }
    return rep;
}

// Extreme critical value of the pencil (C, D):
// h_{C,D}^{-1} = spectral radius of C^{dagger/2} D C^{dagger/2},
// requiring ker C subset ker D. Returns that spectral radius together
// with the maximizing unit vector, which lies in (ker C)^perp.
inline PencilResult extreme_ratio(const HermMatrix& C, const HermMatrix& D) {
    if (!psd_check(C).is_psd || !psd_check(D).is_psd)
        throw NotPsd("extreme_ratio: inputs must be PSD");
    const double dscale = std::max(1.0, D.max_abs());
    for (const auto& v : kernel_basis(C).vectors)
        if ((D.a * v).norm() > 1e-8 * dscale)
            throw KernelNotContained("extreme_ratio: ker C not contained in ker D");
    HermMatrix P = pseudo_inverse_sqrt(C);
    HermMatrix S(P.a * D.a * P.a);
    auto es = eigensolve(S);
    const int n = C.dim();
    PencilResult res;
    res.value = es.eigenvalues()(n - 1);
    // pull the maximizer of w* S w back to the Rayleigh-quotient variable
    CVector v = P.a * es.eigenvectors().col(n - 1);
    if (v.norm() > 1e-14) res.optimizer = v / v.norm();
    return res;
}

// C(c; z^M; A) = rho( h_c[A]^{dagger/2} A^{o M} h_c[A]^{dagger/2} ).
inline PencilResult critical_value(const HermMatrix& A, const CoeffVector& c,
                                   long long M) {
    if (A.max_abs() == 0.0) throw ZeroMatrix("critical_value: A must be non-zero");
    if (c.dim() != A.dim())
        throw Error("critical_value: length(c) must equal dim(A)");
    return extreme_ratio(pencil_base(A, c), hadamard_power(A, M));
}

namespace detail {

template <typename F>
std::vector<F> entrywise_pow(const std::vector<F>& u, long long k) {
    std::vector<F> out(u.size(), F(1));
    for (long long p = 0; p < k; ++p)
        for (std::size_t i = 0; i < u.size(); ++i) out[i] *= u[i];
    return out;
}

} // namespace detail

// Exact rank-one critical value for a real rational vector u with
// nonsingular Gram matrix G = sum_j c_j u^{o j} (u^{o j})^T:
//   C(c; z^M; u u^T) = (u^{o M})^T G^{-1} u^{o M}.
// Nonsingularity holds whenever the entries of u are pairwise distinct
// and nonzero (Vandermonde structure); nullopt signals a singular G.
inline std::optional<Rational> critical_value_rank_one_exact(const RatVector& u,
                                                             const CoeffVector& c,
                                                             long long M) {
    const std::size_t n = u.size();
    if (n == 0) throw ZeroVector("critical_value_rank_one: empty vector");
    bool all_zero = true;
    for (const auto& x : u) all_zero = all_zero && x == 0;
    if (all_zero) throw ZeroVector("critical_value_rank_one: zero vector");
    if (c.c.size() != n)
        throw Error("critical_value_rank_one: length(c) must equal length(u)");
    RatMatrix g = rat_zeros(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Rational base = u[a] * u[b], p(1), sum(0);
            for (std::size_t j = 0; j < n; ++j) {
                sum += c.c[j] * p;
                p *= base;
            }
            g[a][b] = sum;
        }
    RatVector um(n);
    for (std::size_t i = 0; i < n; ++i) um[i] = pow_rational(u[i], M);
    auto x = rat_solve(std::move(g), um);
    if (!x) return std::nullopt;
    return rat_dot(um, *x);
}

// Float path via the Moore-Penrose inverse; valid for any complex u.
inline double critical_value_rank_one(const CVector& u, const CoeffVector& c,
                                      long long M) {
    if (u.size() == 0 || u.norm() == 0.0)
        throw ZeroVector("critical_value_rank_one: zero vector");
    HermMatrix A(CMatrix(u * u.adjoint()));
    return critical_value(A, c, M).value;
}

// Exact evaluations of the rank-one critical value along the witness
// family u(t) = sqrt(rho) (1 - t, ..., 1 - N t). The sqrt(rho) factor
// is absorbed by scaling: the value equals
//   rho^M * C(c'; z^M; w w^T), with w = (1 - t, ..., 1 - N t) and
//   c'_j = c_j rho^j, which keeps the whole computation rational.
inline std::vector<std::pair<Rational, Rational>>
sup_over_witness_family(const CoeffVector& c, long long M, const Rational& rho,
                        const std::vector<Rational>& t_grid) {
    const long long N = c.dim();
    std::vector<Rational> scaled;
    for (long long j = 0; j < N; ++j)
        scaled.push_back(c.c[static_cast<std::size_t>(j)] * pow_rational(rho, j));
    CoeffVector cs{std::move(scaled)};
    std::vector<std::pair<Rational, Rational>> out;
    for (const Rational& t : t_grid) {
        if (t <= 0 || t >= Rational(1, N))
            throw TOutOfRange("sup_over_witness_family: t must lie in (0, 1/N)");
        RatVector w(static_cast<std::size_t>(N));
        for (long long k = 1; k <= N; ++k)
            w[static_cast<std::size_t>(k - 1)] = Rational(1) - Rational(k) * t;
        auto v = critical_value_rank_one_exact(w, cs, M);
        if (!v)
            throw Error("sup_over_witness_family: singular Gram matrix (unexpected)");
        out.emplace_back(t, pow_rational(rho, M) * *v);
    }
    return out;
}

} // namespace hadpos
