#pragma once

#include "hadpos/matrix_io.hpp"
#include "hadpos/oracle.hpp"
#include "hadpos/strata.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace hadpos {

namespace detail {

inline Rational random_rational(std::mt19937_64& rng, long long lo = -6, long long hi = 6,
                                long long den_max = 4) {
    std::uniform_int_distribution<long long> num(lo, hi), den(1, den_max);
    return Rational(num(rng), den(rng));
}

inline RatVector random_rat_vector(std::mt19937_64& rng, std::size_t n) {
    RatVector v(n);
    for (auto& x : v) x = random_rational(rng);
    return v;
}

inline void merge(json& suite, const std::string& name, const IdentityReport& rep,
                  std::uint64_t seed) {
    json c;
    c["check"] = name;
    c["seed"] = seed;
    c["instances"] = rep.instance_count;
    c["pass"] = rep.pass();
    if (!rep.pass()) {
        json fs = json::array();
        for (const auto& f : rep.failures)
            fs.push_back({{"seed", f.seed}, {"lhs", f.lhs}, {"rhs", f.rhs}, {"diff", f.diff}});
        c["failures"] = std::move(fs);
        suite["pass"] = false;
    }
    suite["checks"].push_back(std::move(c));
}

inline void merge_bool(json& suite, const std::string& name, bool ok,
                       std::uint64_t seed, json detail = json::object()) {
    json c;
    c["check"] = name;
    c["seed"] = seed;
    c["pass"] = ok;
    if (!detail.empty()) c["detail"] = std::move(detail);
    if (!ok) suite["pass"] = false;
    suite["checks"].push_back(std::move(c));
}

} // namespace detail

// Exact determinantal identities on random rational instances.
inline json run_identity_suite(std::uint64_t seed, long long trials) {
    json suite;
    suite["suite"] = "identities";
    suite["seed"] = seed;
    suite["trials"] = trials;
    suite["pass"] = true;
    suite["checks"] = json::array();
    std::mt19937_64 rng(seed);
    for (long long t = 0; t < trials; ++t) {
        const std::uint64_t s = rng();
        std::mt19937_64 local(s);
        std::uniform_int_distribution<std::size_t> dim(1, 4);
        std::uniform_int_distribution<long long> mdist(0, 7);

        const std::size_t N = dim(local);
        RatVector u = detail::random_rat_vector(local, N);
        RatVector v = detail::random_rat_vector(local, N);

        // rank-one expansion: random exponent set of size m, including m < N
        std::uniform_int_distribution<std::size_t> mlen(0, N + 2);
        std::size_t m = mlen(local);
        std::vector<long long> exps;
        long long e = 0;
        for (std::size_t i = 0; i < m; ++i) {
            e += std::uniform_int_distribution<long long>(i == 0 ? 0 : 1, 3)(local);
            exps.push_back(e);
        }
        std::vector<Rational> coeffs;
        for (std::size_t i = 0; i < m; ++i) {
            Rational c = detail::random_rational(local);
            coeffs.push_back(c == 0 ? Rational(1) : c);
        }
        detail::merge(suite, "rank_one_expansion",
                      verify_rank_one_expansion(u, v, exps, coeffs, s), s);

        // determinant factorization: positive coefficients, M >= N
        std::vector<Rational> pos;
        for (std::size_t i = 0; i < N; ++i)
            pos.push_back(Rational(std::uniform_int_distribution<long long>(1, 5)(local),
                                   std::uniform_int_distribution<long long>(1, 3)(local)));
        const long long M = static_cast<long long>(N) + mdist(local) % 4;
        const long long R = mdist(local) % 3;
        detail::merge(suite, "det_factorization",
                      verify_det_factorization(u, v, CoeffVector(pos), M, R, s), s);

        // entrywise power expansion on a random rational 3x3
        RatMatrix A(3, RatVector(3));
        for (auto& row : A)
            for (auto& x : row) x = detail::random_rational(local);
        detail::merge(suite, "power_expansion",
                      verify_power_expansion(A, 3 + mdist(local), s), s);
    }
    return suite;
}

// Phase transition of the sharp threshold, both directions.
inline json run_transition_suite(std::uint64_t seed, long long trials) {
    json suite;
    suite["suite"] = "transition";
    suite["seed"] = seed;
    suite["trials"] = trials;
    suite["pass"] = true;
    suite["checks"] = json::array();
    std::mt19937_64 rng(seed);
    for (long long t = 0; t < trials; ++t) {
        const std::uint64_t s = rng();
        std::mt19937_64 local(s);
        std::uniform_int_distribution<long long> dim(1, 4), mm(0, 3), cc(1, 3);
        const long long N = dim(local);
        std::vector<Rational> cv;
        for (long long j = 0; j < N; ++j) cv.emplace_back(cc(local), cc(local));
        CoeffVector c(cv);
        const long long M = N + mm(local);
        const Rational rho(cc(local), cc(local));
        const Rational Cx = threshold_constant({c, M, N, rho}).exact;
        const double at = -1.0 / to_double(Cx);
        const double below = at * (1.0 + 1e-2);

        double min_obs = 1.0;
        auto w_at = find_negativity_witness(c, at, M, rho, 60, s, &min_obs);
        detail::merge_bool(suite, "no_witness_at_threshold", !w_at && min_obs >= -1e-8, s,
                           {{"min_observed", min_obs}});
        auto w_below = find_negativity_witness(c, below, M, rho, 60, s);
        detail::merge_bool(suite, "witness_below_threshold", bool(w_below), s,
                           w_below ? json{{"min_eigenvalue", w_below->min_eigenvalue},
                                          {"draw_seed", w_below->seed}}
                                   : json::object());
        auto w_pos = find_negativity_witness(c, 0.5, M, rho, 20, s);
        detail::merge_bool(suite, "no_witness_nonnegative", !w_pos, s);
    }
    // 2x2 three-term transition at a fixed instance, exact grid
    auto rep = verify_2x2_threshold(0, 1, 2, Rational(1), Rational(1), 60);
    detail::merge_bool(suite, "threshold_2x2",
                       rep.at_threshold_psd && rep.f_nonneg_monotone &&
                           rep.below_threshold_witness,
                       seed);
    return suite;
}

// Simultaneous-kernel route agreement on random structured PSD matrices.
inline json run_kernel_suite(std::uint64_t seed, long long trials) {
    json suite;
    suite["suite"] = "kernels";
    suite["seed"] = seed;
    suite["trials"] = trials;
    suite["pass"] = true;
    suite["checks"] = json::array();
    std::mt19937_64 rng(seed);
    for (long long t = 0; t < trials; ++t) {
        const std::uint64_t s = rng();
        std::mt19937_64 local(s);
        std::uniform_int_distribution<int> dim(2, 6), kdist(1, 3);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const int n = dim(local);

        // block-structured A: random partition, equal entries per block pair
        int k = std::min(n, kdist(local));
        std::vector<std::vector<int>> blocks(k);
        for (int i = 0; i < n; ++i)
            blocks[std::uniform_int_distribution<int>(0, k - 1)(local)].push_back(i);
        blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                                    [](const auto& b) { return b.empty(); }),
                     blocks.end());
        k = static_cast<int>(blocks.size());
        CMatrix G(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) G(i, j) = Complex(gauss(local), gauss(local));
        CMatrix C = G * G.adjoint() + 0.1 * CMatrix::Identity(k, k);
        CMatrix A = CMatrix::Zero(n, n);
        for (int bi = 0; bi < k; ++bi)
            for (int bj = 0; bj < k; ++bj)
                for (int i : blocks[bi])
                    for (int j : blocks[bj]) A(i, j) = C(bi, bj);

        // B: random PD with nonzero diagonal
        CMatrix X(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) X(i, j) = Complex(gauss(local), gauss(local));
        CMatrix B = X * X.adjoint() + 0.1 * CMatrix::Identity(n, n);

        CoeffVector ones{std::vector<Rational>(static_cast<std::size_t>(n), Rational(1))};
        bool ok = true;
        std::string msg;
        try {
            HermMatrix Ah{std::move(A)}, Bh{std::move(B)};
            KernelBasis kb = simultaneous_kernel(Ah, Bh, ones);
            auto dec = stratify(Ah, GroupTag::Trivial);
            auto inv = kernel_partition_invariance(Ah, Bh, dec.partition);
            ok = inv.equal && inv.coarser_than_trivial &&
                 kb.dim() == inv.k_full.dim();
            // reconstruction must return the input exactly up to float tol
            CMatrix R = reconstruct(dec);
            ok = ok && (R - Ah.a).cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, Ah.max_abs());
        } catch (const Error& e) {
            ok = false;
            msg = e.what();
        }
        detail::merge_bool(suite, "kernel_routes_agree", ok, s,
                           msg.empty() ? json::object() : json{{"error", msg}});
    }
    return suite;
}

inline json run_suites(const std::string& which, std::uint64_t seed, long long trials) {
    json out;
    out["pass"] = true;
    out["suites"] = json::array();
    auto add = [&](json s) {
        if (!s["pass"].get<bool>()) out["pass"] = false;
        out["suites"].push_back(std::move(s));
    };
    if (which == "all" || which == "identities") add(run_identity_suite(seed, trials));
    if (which == "all" || which == "transition") add(run_transition_suite(seed, std::max<long long>(1, trials / 10)));
    if (which == "all" || which == "kernels") add(run_kernel_suite(seed, trials));
    if (out["suites"].empty()) throw ParseError("unknown suite: " + which);
    return out;
}

} // namespace hadpos
