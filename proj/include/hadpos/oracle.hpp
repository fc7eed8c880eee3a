#pragma once

#include "hadpos/errors.hpp"
#include "hadpos/matrix.hpp"
#include "hadpos/partition.hpp"
#include "hadpos/pencil.hpp"
#include "hadpos/rational.hpp"
#include "hadpos/rational_linalg.hpp"
#include "hadpos/schur.hpp"
#include "hadpos/threshold.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace hadpos {

struct IdentityFailure {
    std::uint64_t seed;
    std::string lhs;
    std::string rhs;
    std::string diff;
};

struct IdentityReport {
    long long instance_count = 0;
    std::vector<IdentityFailure> failures;
    bool exact_mode = true;

    bool pass() const { return failures.empty(); }

    void record(std::uint64_t seed, const Rational& lhs, const Rational& rhs) {
        ++instance_count;
        if (lhs != rhs)
            failures.push_back({seed, to_string(lhs), to_string(rhs), to_string(lhs - rhs)});
    }
};

namespace detail {

// lambda(n') by staircase subtraction: sort the exponent subset
// descending d_1 > ... > d_N, then lambda_k = d_k - (N - k).
inline Partition staircase_subtract(std::vector<long long> exps) {
    std::sort(exps.begin(), exps.end(), std::greater<>());
    const long long N = static_cast<long long>(exps.size());
    std::vector<long long> parts(exps.size());
    for (long long k = 1; k <= N; ++k)
        parts[static_cast<std::size_t>(k - 1)] = exps[static_cast<std::size_t>(k - 1)] - (N - k);
    return Partition(std::move(parts));
}

inline void foreach_subset(std::size_t m, std::size_t take,
                           const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> idx(take);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == take) {
            fn(idx);
            return;
        }
        for (std::size_t i = start; i + (take - depth) <= m; ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
}

} // namespace detail

// det sum_j c_{n_j} (u v^T)^{o n_j}
//   = Delta(u) Delta(v) sum_{|n'| = N} s_{lambda(n')}(u) s_{lambda(n')}(v) prod c,
// checked exactly; both sides are zero when fewer than N summands.
inline IdentityReport verify_rank_one_expansion(const RatVector& u, const RatVector& v,
                                                const std::vector<long long>& exps,
                                                const std::vector<Rational>& coeffs,
                                                std::uint64_t seed = 0) {
    const std::size_t N = u.size(), m = exps.size();
    if (v.size() != N || coeffs.size() != m)
        throw Error("verify_rank_one_expansion: size mismatch");
    for (std::size_t i = 1; i < m; ++i)
        if (exps[i] <= exps[i - 1])
            throw Error("verify_rank_one_expansion: exponents must be strictly increasing");

    RatMatrix lhs_m = rat_zeros(N, N);
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b)
            for (std::size_t j = 0; j < m; ++j)
                lhs_m[a][b] += coeffs[j] * pow_rational(u[a] * v[b], exps[j]);
    Rational lhs = rat_det(std::move(lhs_m));

    Rational rhs(0);
    if (m >= N) {
        detail::foreach_subset(m, N, [&](const std::vector<std::size_t>& idx) {
            std::vector<long long> sub;
            Rational cprod(1);
            for (auto i : idx) {
                sub.push_back(exps[i]);
                cprod *= coeffs[i];
            }
            Partition lam = detail::staircase_subtract(std::move(sub));
            rhs += schur_eval(lam, u) * schur_eval(lam, v) * cprod;
        });
        rhs *= vandermonde_det(u) * vandermonde_det(v);
    }

    IdentityReport rep;
    rep.record(seed, lhs, rhs);
    return rep;
}

// det p_t[u v^T] with p_t(x) = t (c_0 x^R + ... + c_{N-1} x^{R+N-1}) - x^{R+M}
// against the hook-Schur factored form, compared as degree-N polynomials
// in t by exact evaluation at t = 0, 1, ..., N.
inline IdentityReport verify_det_factorization(const RatVector& u, const RatVector& v,
                                               const CoeffVector& c, long long M,
                                               long long R, std::uint64_t seed = 0) {
    const std::size_t N = u.size();
    if (v.size() != N || c.c.size() != N)
        throw Error("verify_det_factorization: size mismatch");
    if (M < static_cast<long long>(N))
        throw Error("verify_det_factorization: requires M >= N");
    if (R < 0) throw Error("verify_det_factorization: requires R >= 0");

    // hook-Schur data shared by every evaluation point
    Rational hook_sum(0);
    for (long long j = 0; j < static_cast<long long>(N); ++j) {
        Partition mu = hook_partition({M, static_cast<long long>(N), j});
        hook_sum += schur_eval(mu, u) * schur_eval(mu, v) / c.c[static_cast<std::size_t>(j)];
    }
    Rational prefix = vandermonde_det(u) * vandermonde_det(v);
    for (std::size_t j = 0; j < N; ++j)
        prefix *= c.c[j] * pow_rational(u[j], R) * pow_rational(v[j], R);

    IdentityReport rep;
    for (long long tv = 0; tv <= static_cast<long long>(N); ++tv) {
        Rational t(tv);
        RatMatrix m = rat_zeros(N, N);
        for (std::size_t a = 0; a < N; ++a)
            for (std::size_t b = 0; b < N; ++b) {
                Rational x = u[a] * v[b], s(0), p = pow_rational(x, R);
                for (std::size_t j = 0; j < N; ++j) {
                    s += c.c[j] * p;
                    p *= x;
                }
                m[a][b] = t * s - pow_rational(x, R + M);
            }
        Rational lhs = rat_det(std::move(m));
        Rational rhs = pow_rational(t, static_cast<long long>(N) - 1) * prefix *
                       (t - hook_sum);
        rep.record(seed, lhs, rhs);
    }
    return rep;
}

// A^{o M} = sum_j (-1)^{N-j-1} diag(s_{mu(M,N,j)}(row_i)) A^{o j}, exactly.
inline IdentityReport verify_power_expansion(const RatMatrix& A, long long M,
                                             std::uint64_t seed = 0) {
    const std::size_t N = A.size();
    if (N == 0 || A[0].size() != N)
        throw Error("verify_power_expansion: matrix must be square");
    if (M < static_cast<long long>(N))
        throw Error("verify_power_expansion: requires M >= N");

    IdentityReport rep;
    for (std::size_t i = 0; i < N; ++i) {
        const RatVector& row = A[i];
        for (std::size_t k = 0; k < N; ++k) {
            Rational lhs = pow_rational(A[i][k], M);
            Rational rhs(0);
            for (long long j = 0; j < static_cast<long long>(N); ++j) {
                Partition mu = hook_partition({M, static_cast<long long>(N), j});
                Rational s = schur_eval(mu, row);
                Rational sign = ((static_cast<long long>(N) - j - 1) % 2 == 0)
                                    ? Rational(1)
                                    : Rational(-1);
                rhs += sign * s * pow_rational(A[i][k], j);
            }
            rep.record(seed, lhs, rhs);
        }
    }
    return rep;
}

// Necessary condition on rank-one matrices: the first min(N, #nonzero)
// nonzero coefficients must be strictly positive.
inline bool necessary_coeff_check(const std::vector<double>& coeffs,
                                  const std::vector<long long>& exponents, long long N) {
    if (coeffs.size() != exponents.size())
        throw Error("necessary_coeff_check: size mismatch");
    for (std::size_t i = 1; i < exponents.size(); ++i)
        if (exponents[i] <= exponents[i - 1])
            throw Error("necessary_coeff_check: exponents must be distinct ascending");
    long long seen = 0;
    for (std::size_t i = 0; i < coeffs.size() && seen < N; ++i) {
        if (coeffs[i] == 0.0) continue;
        if (coeffs[i] < 0.0) return false;
        ++seen;
    }
    return true;
}

struct NegativityWitness {
    HermMatrix matrix;
    CVector vector;        // direction with v* f[A] v < 0
    double min_eigenvalue; // 1 + c' * C(c; z^M; A), the pencil-normalized bottom
    std::uint64_t seed;
};

// Search for A in P_N(clos disc(0, rho)) with f[A] = h_c[A] + c' A^{o M}
// indefinite. Negativity is certified in the pencil normalization
//   lambda(A) = 1 + c' * C(c; z^M; A),
// which is negative exactly when f[A] is indefinite; the raw bottom
// eigenvalue of f[A] decays with the conditioning of the base and is
// useless as a detector near the sharp threshold. Mixes the
// deterministic rank-one family u_k = sqrt(rho) (1 - t' eps_k),
// evaluated in exact rational arithmetic, with random PSD draws;
// absence after the budget is a legitimate outcome.
inline std::optional<NegativityWitness> find_negativity_witness(
    const CoeffVector& c, double c_prime, long long M, const Rational& rho,
    long long budget, std::uint64_t seed = 0, double* min_observed = nullptr) {
    const int N = static_cast<int>(c.dim());
    if (M < N) throw Error("find_negativity_witness: requires M >= N");
    if (min_observed) *min_observed = 1.0;
    if (c_prime >= 0.0) return std::nullopt; // entrywise product of PSD is PSD
    const double rho_d = to_double(rho);
    std::mt19937_64 rng(seed);

    std::vector<Rational> scaled;
    for (int j = 0; j < N; ++j)
        scaled.push_back(c.c[static_cast<std::size_t>(j)] * pow_rational(rho, j));
    const CoeffVector cs{std::move(scaled)};
    const Rational rho_M = pow_rational(rho, M);

    // rank-one family member at rational t', eps: exact critical value,
    // with sqrt(rho) absorbed by coefficient scaling
    auto test_rank_one = [&](const Rational& tp, const std::vector<Rational>& eps,
                             std::uint64_t s) -> std::optional<NegativityWitness> {
        RatVector w(static_cast<std::size_t>(N));
        for (int k = 0; k < N; ++k)
            w[static_cast<std::size_t>(k)] = Rational(1) - tp * eps[static_cast<std::size_t>(k)];
        auto cv = critical_value_rank_one_exact(w, cs, M);
        if (!cv) return std::nullopt;
        const double lam = 1.0 + c_prime * to_double(rho_M * *cv);
        if (min_observed) *min_observed = std::min(*min_observed, lam);
        if (lam >= -1e-6) return std::nullopt;
        // violating direction: the Rayleigh maximizer G^{-1} u^{o M}
        RatMatrix g = rat_zeros(static_cast<std::size_t>(N), static_cast<std::size_t>(N));
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) {
                Rational base = w[static_cast<std::size_t>(a)] * w[static_cast<std::size_t>(b)];
                Rational p(1), sum(0);
                for (int j = 0; j < N; ++j) {
                    sum += cs.c[static_cast<std::size_t>(j)] * p;
                    p *= base;
                }
                g[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = sum;
            }
        RatVector um(static_cast<std::size_t>(N));
        for (int i = 0; i < N; ++i)
            um[static_cast<std::size_t>(i)] = pow_rational(w[static_cast<std::size_t>(i)], M);
        auto x = rat_solve(std::move(g), um);
        CVector u(N), v(N);
        for (int k = 0; k < N; ++k) {
            u(k) = std::sqrt(rho_d) * to_double(w[static_cast<std::size_t>(k)]);
            v(k) = x ? to_double((*x)[static_cast<std::size_t>(k)]) : 1.0;
        }
        if (v.norm() > 0) v /= v.norm();
        return NegativityWitness{HermMatrix(CMatrix(u * u.adjoint())), v, lam, s};
    };

    auto test_float = [&](HermMatrix A, std::uint64_t s) -> std::optional<NegativityWitness> {
        PencilResult pr = critical_value(A, c, M);
        const double lam = 1.0 + c_prime * pr.value;
        if (min_observed) *min_observed = std::min(*min_observed, lam);
        if (lam >= -1e-6) return std::nullopt;
        CVector v = pr.optimizer ? *pr.optimizer : CVector(CVector::Ones(N) / std::sqrt(N));
        return NegativityWitness{std::move(A), std::move(v), lam, s};
    };

    long long draws = 0;
    std::vector<Rational> det_eps;
    for (int k = 0; k < N; ++k) det_eps.emplace_back(k + 1, N + 1);
    for (long long d = 1; d <= 6 && draws < budget; ++d) {
        ++draws;
        if (auto w = test_rank_one(pow_rational(Rational(1, 10), d), det_eps, seed))
            return w;
    }
    while (draws < budget) {
        const std::uint64_t s = rng();
        std::mt19937_64 local(s);
        if (draws % 2 == 0) {
            // random family member: t' in (0, 1/2), distinct eps in (0, 1)
            std::uniform_int_distribution<long long> num(1, 999);
            Rational tp(num(local), 2000);
            std::vector<Rational> eps;
            while (eps.size() < static_cast<std::size_t>(N)) {
                Rational e(num(local), 1000);
                if (std::find(eps.begin(), eps.end(), e) == eps.end()) eps.push_back(e);
            }
            ++draws;
            if (auto w = test_rank_one(tp, eps, s)) return w;
        } else {
            // random PSD with entries scaled into the closed disc
            CMatrix X(N, N);
            std::normal_distribution<double> gauss(0.0, 1.0);
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) X(i, j) = Complex(gauss(local), gauss(local));
            CMatrix G = X * X.adjoint();
            const double mx = G.cwiseAbs().maxCoeff();
            if (mx > 0) G *= rho_d / mx;
            ++draws;
            if (auto w = test_float(HermMatrix(std::move(G)), s)) return w;
        }
    }
    return std::nullopt;
}

struct Threshold2x2Report {
    bool at_threshold_psd = true;    // normalized determinant >= 0 on the grid
    bool f_nonneg_monotone = true;   // f >= 0 and nondecreasing on [0, 1]
    bool below_threshold_witness = false; // violation found with c_p below critical
    std::pair<Rational, Rational> witness_point{0, 0};
};

namespace detail {

// Divided difference (u1^k - u2^k) / (u1 - u2), extended to u1 = u2.
inline double divided_power(double u1, double u2, long long k) {
    double s = 0.0;
    for (long long i = 0; i < k; ++i)
        s += std::pow(u1, static_cast<double>(i)) *
             std::pow(u2, static_cast<double>(k - 1 - i));
    return s;
}

} // namespace detail

// At the critical c_p the determinant of f[u u^T], normalized by the
// removable (u2 - u1)^2 factor so the u1 = u2 = 1 corner is visible,
// stays non-negative over the whole grid and f is non-negative and
// nondecreasing; below the critical value by delta a grid witness with
// negative determinant appears at that corner.
inline Threshold2x2Report verify_2x2_threshold(long long m, long long n, long long p,
                                               const Rational& c_m, const Rational& c_n,
                                               long long grid,
                                               const Rational& delta = Rational(1, 1000)) {
    if (!(0 <= m && m < n && n < p))
        throw BadExponentOrder("verify_2x2_threshold: need 0 <= m < n < p");
    const double cm = to_double(c_m), cn = to_double(c_n);
    const double cp_star = to_double(threshold_2x2(m, n, p, c_m, c_n));
    const double cp_low = cp_star - to_double(delta);

    Threshold2x2Report rep;
    for (long long i = 1; i <= grid; ++i) {
        const double u1 = static_cast<double>(i) / grid;
        for (long long j = i; j <= grid; ++j) {
            const double u2 = static_cast<double>(j) / grid;
            const double fnm = detail::divided_power(u1, u2, n - m);
            const double fpm = detail::divided_power(u1, u2, p - m);
            const double fpn = detail::divided_power(u1, u2, p - n);
            const double mm = std::pow(u1 * u2, static_cast<double>(2 * m));
            const double nn = std::pow(u1 * u2, static_cast<double>(2 * n));
            const double base = cm * cn * mm * fnm * fnm;
            const double mix = cm * mm * fpm * fpm + cn * nn * fpn * fpn;
            if (base + cp_star * mix < -1e-12) rep.at_threshold_psd = false;
            if (!rep.below_threshold_witness && base + cp_low * mix < -1e-9) {
                rep.below_threshold_witness = true;
                rep.witness_point = {Rational(i, grid), Rational(j, grid)};
            }
        }
    }
    // f(x) = c_m x^m + c_n x^n + c_p x^p on a 1-d grid
    double prev = 0.0;
    for (long long i = 0; i <= grid; ++i) {
        const double x = static_cast<double>(i) / grid;
        const double f = cm * std::pow(x, static_cast<double>(m)) +
                         cn * std::pow(x, static_cast<double>(n)) +
                         cp_star * std::pow(x, static_cast<double>(p));
        if (f < -1e-12 || (i > 0 && f < prev - 1e-12)) rep.f_nonneg_monotone = false;
        prev = f;
    }
    return rep;
}

} // namespace hadpos
