#pragma once

#include "hadpos/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace hadpos {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Dense complex Hermitian matrix with an optional domain-radius
// certificate: every entry must lie in the closed disc of radius rho.
struct HermMatrix {
    CMatrix a;
    std::optional<double> rho;

    HermMatrix() = default;

    explicit HermMatrix(CMatrix m, std::optional<double> r = std::nullopt)
        : a(std::move(m)), rho(r) {
        validate();
    }

    int dim() const { return static_cast<int>(a.rows()); }

    double max_abs() const {
        return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
    }

    void validate() const {
        if (a.rows() != a.cols() || a.rows() < 1)
            throw NonHermitianInput("HermMatrix: matrix must be square, N >= 1");
        const double tol = 1e-12 * std::max(1.0, max_abs());
        if ((a - a.adjoint()).cwiseAbs().maxCoeff() > tol)
            throw NonHermitianInput("HermMatrix: not Hermitian within tolerance");
        if (rho) {
            if (*rho < 0) throw Error("HermMatrix: negative radius");
            if (max_abs() > *rho + 1e-12)
                throw Error("HermMatrix: entry outside stated radius");
        }
    }
};

struct PsdVerdict {
    bool is_psd;
    double min_eigenvalue;
    double tolerance_used;
};

struct KernelBasis {
    int dim_ambient = 0;
    std::vector<CVector> vectors; // orthonormal, possibly empty

    int dim() const { return static_cast<int>(vectors.size()); }
};

inline CMatrix all_ones(int n) { return CMatrix::Ones(n, n); }

// Entrywise k-th power; k = 0 gives the all-ones matrix.
inline HermMatrix hadamard_power(const HermMatrix& A, long long k) {
    if (k < 0) throw Error("hadamard_power: negative exponent");
    const int n = A.dim();
    CMatrix out = all_ones(n);
    for (long long p = 0; p < k; ++p) out = out.cwiseProduct(A.a);
    std::optional<double> r;
    if (A.rho) r = std::pow(*A.rho, static_cast<double>(k));
    return HermMatrix(std::move(out), r);
}

inline HermMatrix hadamard_product(const HermMatrix& A, const HermMatrix& B) {
    return HermMatrix(A.a.cwiseProduct(B.a));
}

// sum_k coeffs[k] * A^{o exponents[k]}; exponents must be distinct.
inline HermMatrix entrywise_poly(const HermMatrix& A,
                                 const std::vector<double>& coeffs,
                                 const std::vector<long long>& exponents) {
    if (coeffs.size() != exponents.size())
        throw Error("entrywise_poly: coeffs/exponents size mismatch");
    for (std::size_t i = 0; i < exponents.size(); ++i)
        for (std::size_t j = i + 1; j < exponents.size(); ++j)
            if (exponents[i] == exponents[j])
                throw DuplicateExponent("entrywise_poly: repeated exponent");
    const int n = A.dim();
    CMatrix out = CMatrix::Zero(n, n);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        out += coeffs[k] * hadamard_power(A, exponents[k]).a;
    return HermMatrix(std::move(out));
}

inline Eigen::SelfAdjointEigenSolver<CMatrix> eigensolve(const HermMatrix& A) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(A.a);
    if (es.info() != Eigen::Success)
        throw Error("eigensolver failed to converge");
    return es;
}

inline PsdVerdict psd_check(const HermMatrix& A, double eps = 1e-9) {
    auto es = eigensolve(A);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().cwiseAbs().maxCoeff();
    const double tol = eps * std::max(1.0, hi);
    return PsdVerdict{lo >= -tol, lo, tol};
}

// Moore-Penrose inverse of a PSD matrix: invert eigenvalues above the
// matrix-scaled rank cutoff N * 1e-12 * sigma_max, zero out the rest.
inline HermMatrix pseudo_inverse(const HermMatrix& A) {
    if (!psd_check(A).is_psd)
        throw NotPsd("pseudo_inverse: input not PSD within tolerance");
    auto es = eigensolve(A);
    const int n = A.dim();
    const double smax = es.eigenvalues().cwiseAbs().maxCoeff();
    const double cutoff = n * 1e-12 * smax;
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) {
        const double s = es.eigenvalues()(i);
        d(i) = s > cutoff ? 1.0 / s : 0.0;
    }
    CMatrix out = es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
    return HermMatrix(std::move(out));
}

// C^{dagger/2}: square root of the Moore-Penrose inverse.
inline HermMatrix pseudo_inverse_sqrt(const HermMatrix& A) {
    if (!psd_check(A).is_psd)
        throw NotPsd("pseudo_inverse_sqrt: input not PSD within tolerance");
    auto es = eigensolve(A);
    const int n = A.dim();
    const double smax = es.eigenvalues().cwiseAbs().maxCoeff();
    const double cutoff = n * 1e-12 * smax;
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) {
        const double s = es.eigenvalues()(i);
        d(i) = s > cutoff ? 1.0 / std::sqrt(s) : 0.0;
    }
    CMatrix out = es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
    return HermMatrix(std::move(out));
}

// Orthonormal basis of the span of eigenvectors with eigenvalue below
// the cutoff N * 1e-10 * sigma_max.
inline KernelBasis kernel_basis(const HermMatrix& A) {
    auto es = eigensolve(A);
    const int n = A.dim();
    const double smax = es.eigenvalues().cwiseAbs().maxCoeff();
    const double cutoff = n * 1e-10 * std::max(smax, 0.0);
    KernelBasis kb;
    kb.dim_ambient = n;
    for (int i = 0; i < n; ++i)
        if (std::abs(es.eigenvalues()(i)) <= cutoff)
            kb.vectors.push_back(es.eigenvectors().col(i));
    return kb;
}

// Phase normalization: rotate so the first nonzero coordinate is real
// and non-negative.
inline CVector normalize_phase(CVector u, double tol = 0.0) {
    for (int i = 0; i < u.size(); ++i) {
        if (std::abs(u(i)) > tol) {
            Complex phase = u(i) / std::abs(u(i));
            u /= phase;
            u(i) = Complex(std::abs(u(i)), 0.0); // kill rounding residue
            return u;
        }
    }
    return u;
}

// u with A = u u^*, first nonzero coordinate real non-negative.
inline CVector rank_one_factor(const HermMatrix& A) {
    auto es = eigensolve(A);
    const int n = A.dim();
    const double scale = std::max(A.max_abs(), 0.0);
    const double tol = 1e-9 * std::max(1.0, scale);
    double top = es.eigenvalues()(n - 1);
    if (top < -tol) throw NotPsd("rank_one_factor: input not PSD");
    // all eigenvalues but the top one must vanish
    for (int i = 0; i + 1 < n; ++i)
        if (std::abs(es.eigenvalues()(i)) > tol)
            throw RankExceedsOne("rank_one_factor: numerical rank exceeds one");
    if (top <= tol) return CVector::Zero(n);
    CVector u = std::sqrt(top) * es.eigenvectors().col(n - 1);
    return normalize_phase(std::move(u), 1e-12 * std::sqrt(std::max(top, 1.0)));
}

inline double numerical_rank(const HermMatrix& A, double rel_cutoff = 1e-10) {
    auto es = eigensolve(A);
    const double smax = es.eigenvalues().cwiseAbs().maxCoeff();
    const double cutoff = A.dim() * rel_cutoff * smax;
    int r = 0;
    for (int i = 0; i < A.dim(); ++i)
        if (std::abs(es.eigenvalues()(i)) > cutoff) ++r;
    return r;
}

// Largest principal angle between the spans of two orthonormal bases;
// zero-dimensional subspaces compare equal iff both are empty.
inline double principal_angle_distance(const KernelBasis& P, const KernelBasis& Q) {
    if (P.dim() != Q.dim()) return 1.0;
    if (P.dim() == 0) return 0.0;
    CMatrix Pm(P.dim_ambient, P.dim()), Qm(Q.dim_ambient, Q.dim());
    for (int i = 0; i < P.dim(); ++i) Pm.col(i) = P.vectors[i];
    for (int i = 0; i < Q.dim(); ++i) Qm.col(i) = Q.vectors[i];
    Eigen::JacobiSVD<CMatrix> svd(Pm.adjoint() * Qm);
    const double smin = svd.singularValues().minCoeff();
    // sin of the largest principal angle
    return std::sqrt(std::max(0.0, 1.0 - std::min(1.0, smin) * std::min(1.0, smin)));
}

} // namespace hadpos
