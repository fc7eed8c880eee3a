#pragma once

#include "hadpos/errors.hpp"
#include "hadpos/partition.hpp"
#include "hadpos/rational.hpp"
#include "hadpos/schur.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace hadpos {

// Strictly positive coefficients (c_0, ..., c_{N-1}) of the pencil
// base h_c(z) = c_0 + c_1 z + ... + c_{N-1} z^{N-1}.
struct CoeffVector {
    std::vector<Rational> c;

    explicit CoeffVector(std::vector<Rational> coeffs) : c(std::move(coeffs)) {
        if (c.empty()) throw Error("CoeffVector: at least one coefficient required");
        for (const auto& v : c)
            if (v <= 0) throw Error("CoeffVector: coefficients must be > 0");
    }

    long long dim() const { return static_cast<long long>(c.size()); }
};

struct ThresholdQuery {
    CoeffVector c;
    long long M;
    long long N;
    Rational rho;
};

struct ThresholdValue {
    Rational exact;
    double float_view;
};

namespace detail {

inline void check_query(const ThresholdQuery& q) {
    if (q.N < 1 || q.M < 0 || q.rho <= 0)
        throw Error("threshold: need N >= 1, M >= 0, rho > 0");
    if (q.c.dim() != q.N)
        throw Error("threshold: length(c) must equal N");
}

} // namespace detail

// The sharp constant
//   C(c; z^M; N, rho) =
//     sum_j binom(M,j)^2 binom(M-j-1,N-j-1)^2 rho^{M-j} / c_j,
// with the generalized (falling-factorial) binomial, so that M < N is
// legal and the value collapses to 1/c_M.
inline ThresholdValue threshold_constant(const ThresholdQuery& q) {
    detail::check_query(q);
    Rational sum(0);
    for (long long j = 0; j < q.N; ++j) {
        Rational b1 = gen_binomial(q.M, j);
        if (b1 == 0) continue;
        Rational b2 = gen_binomial(q.M - j - 1, q.N - j - 1);
        if (b2 == 0) continue;
        sum += b1 * b1 * b2 * b2 * pow_rational(q.rho, q.M - j) /
               q.c.c[static_cast<std::size_t>(j)];
    }
    return ThresholdValue{sum, to_double(sum)};
}

// Most negative admissible leading coefficient, -1/C.
inline Rational negative_threshold(const ThresholdQuery& q) {
    return Rational(-1) / threshold_constant(q).exact;
}

// Partial constants C_m = C(c_m; z^{M-N+m}; m, rho) with
// c_m = (c_{N-m}, ..., c_{N-1}); strictly increasing in m.
inline std::vector<Rational> partial_constants(const CoeffVector& c, long long M,
                                               long long N, const Rational& rho) {
    if (M < N) throw Error("partial_constants: requires M >= N");
    std::vector<Rational> out;
    for (long long m = 1; m <= N; ++m) {
        std::vector<Rational> tail(c.c.end() - m, c.c.end());
        out.push_back(
            threshold_constant({CoeffVector(std::move(tail)), M - N + m, m, rho}).exact);
    }
    return out;
}

struct AnalyticBound {
    Rational series; // sum over positive tail coefficients of c_M * C(c; z^M)
    Rational bound;  // closed-form upper bound
};

// Theorem-level bound for an analytic tail g(z) = sum c_M z^M, M >= N,
// supplied as a finite truncation. The closed bound is
//   g_2^{(2N-2)}(sqrt(rho)) / (2^{N-1} (N-1)!^2)
//     * sum_j binom(N-1,j)^2 rho^{N-j-1} / c_j
// with g_2(z) = g_+(z^2); only even powers appear in g_2, so the
// derivative at sqrt(rho) is an exact rational.
inline AnalyticBound analytic_bound(const CoeffVector& c,
                                    const std::vector<std::pair<long long, Rational>>& tail,
                                    const Rational& rho) {
    const long long N = c.dim();
    if (rho <= 0) throw Error("analytic_bound: rho must be > 0");
    for (const auto& [M, cm] : tail) {
        (void)cm;
        if (M < N) throw TailBelowN("analytic_bound: tail exponent below N");
    }
    Rational series(0), deriv(0);
    for (const auto& [M, cm] : tail) {
        if (cm <= 0) continue;
        series += cm * threshold_constant({c, M, N, rho}).exact;
        // (2N-2)th derivative of z^{2M} at sqrt(rho): (2M)!/(2M-2N+2)! * rho^{M-N+1}
        BigInt fall = 1;
        for (long long k = 2 * M; k > 2 * M - (2 * N - 2); --k) fall *= k;
        deriv += cm * Rational(fall) * pow_rational(rho, M - N + 1);
    }
    Rational weights(0);
    for (long long j = 0; j < N; ++j) {
        Rational b = gen_binomial(N - 1, j);
        weights += b * b * pow_rational(rho, N - j - 1) / c.c[static_cast<std::size_t>(j)];
    }
    Rational bound = deriv * weights /
                     (pow_rational(Rational(2), N - 1) *
                      Rational(factorial(static_cast<unsigned>(N - 1)) *
                               factorial(static_cast<unsigned>(N - 1))));
    return AnalyticBound{series, bound};
}

// Universal constant h_{N,M} = sum_{m=0}^M C((1,...,1); z^{N+m}; N, rho)
// for polynomials of degree up to N + M.
inline Rational universal_poly_constant(long long N, long long M, const Rational& rho) {
    if (N < 1 || M < 0) throw Error("universal_poly_constant: need N >= 1, M >= 0");
    CoeffVector ones{std::vector<Rational>(static_cast<std::size_t>(N), Rational(1))};
    Rational sum(0);
    for (long long m = 0; m <= M; ++m)
        sum += threshold_constant({ones, N + m, N, rho}).exact;
    return sum;
}

struct CubeBounds {
    Rational eta_lower;
    Rational eta_upper;
    Rational ratio; // eta_upper / eta_lower = C(z^{N+M})^{-1} * sum_m C(z^{N+m}) >= 1
};

// Matrix-cube admissible radius bracket for Hadamard-power pencils.
inline CubeBounds cube_bounds(const CoeffVector& c, long long N, long long M,
                              const Rational& rho) {
    if (c.dim() != N) throw Error("cube_bounds: length(c) must equal N");
    Rational sum(0), last(0);
    for (long long m = 0; m <= M; ++m) {
        last = threshold_constant({c, N + m, N, rho}).exact;
        sum += last;
    }
    return CubeBounds{Rational(1) / sum, Rational(1) / last, sum / last};
}

// b(m, M, rho) * N^{-2(M-m)} with b = ((M+1)!/(m+1)!)^2 rho^{m-M};
// dominates the summand ratio C(z^{N+m}) / C(z^{N+M}).
inline Rational cube_ratio_bound(long long m, long long M, const Rational& rho,
                                 long long N) {
    if (m < 0 || m >= M) throw Error("cube_ratio_bound: need 0 <= m < M");
    Rational b = Rational(factorial(static_cast<unsigned>(M + 1)),
                          factorial(static_cast<unsigned>(m + 1)));
    b = b * b * pow_rational(rho, m - M);
    return b / pow_rational(Rational(N), 2 * (M - m));
}

// Critical third coefficient for f = c_m x^m + c_n x^n + c_p x^p on
// 2x2 matrices: -c_m c_n (n-m)^2 / (c_m (p-m)^2 + c_n (p-n)^2).
inline Rational threshold_2x2(long long m, long long n, long long p,
                              const Rational& c_m, const Rational& c_n) {
    if (!(0 <= m && m < n && n < p))
        throw BadExponentOrder("threshold_2x2: need 0 <= m < n < p");
    if (c_m <= 0 || c_n <= 0)
        throw Error("threshold_2x2: c_m, c_n must be > 0");
    Rational num = -c_m * c_n * Rational((n - m) * (n - m));
    Rational den = c_m * Rational((p - m) * (p - m)) + c_n * Rational((p - n) * (p - n));
    return num / den;
}

} // namespace hadpos
