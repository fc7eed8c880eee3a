#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hadpos/matrix.hpp"

#include <random>

using namespace hadpos;

namespace {

const Complex I{0.0, 1.0};

HermMatrix random_psd(int n, std::mt19937_64& rng, double shift = 0.0) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix X(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) X(i, j) = Complex(g(rng), g(rng));
    return HermMatrix(CMatrix(X * X.adjoint() + shift * CMatrix::Identity(n, n)));
}

} // namespace

TEST_CASE("hermitian validation") {
    CMatrix bad(2, 2);
    bad << 1.0, 2.0, 3.0, 1.0;
    CHECK_THROWS_AS(HermMatrix{bad}, NonHermitianInput);
    CMatrix rect(2, 3);
    CHECK_THROWS_AS(HermMatrix{rect}, NonHermitianInput);
    CMatrix ok(2, 2);
    ok << 1.0, I, -I, 1.0;
    CHECK_NOTHROW(HermMatrix{ok});
    CHECK_THROWS(HermMatrix(ok, 0.5)); // entries exceed the stated radius
    CHECK_NOTHROW(HermMatrix(ok, 1.0));
}

TEST_CASE("hadamard powers") {
    std::mt19937_64 rng(1);
    HermMatrix A = random_psd(3, rng);
    CHECK(hadamard_power(A, 0).a == all_ones(3));
    CMatrix s(1, 1);
    s << 2.0;
    CHECK(hadamard_power(HermMatrix{s}, 3).a(0, 0) == Complex(8.0, 0.0));
    CMatrix c(2, 2);
    c << 1.0, I, -I, 1.0;
    auto sq = hadamard_power(HermMatrix{c}, 2);
    CHECK(sq.a(0, 1) == Complex(-1.0, 0.0));
    CHECK(sq.a(1, 0) == Complex(-1.0, 0.0));
    // radius certificate transforms as rho^k
    HermMatrix R(all_ones(2) * 2.0, 2.0);
    CHECK(*hadamard_power(R, 3).rho == doctest::Approx(8.0));
    // additivity of exponents (exact: entries are exactly representable)
    auto lhs = hadamard_power(A, 5).a;
    auto rhs = hadamard_power(A, 2).a.cwiseProduct(hadamard_power(A, 3).a);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12 * lhs.cwiseAbs().maxCoeff());
}

TEST_CASE("entrywise polynomial") {
    CMatrix s(1, 1);
    s << 1.0;
    CHECK(entrywise_poly(HermMatrix{s}, {1.0, 1.0}, {0, 1}).a(0, 0) ==
          Complex(2.0, 0.0));
    std::mt19937_64 rng(2);
    HermMatrix A = random_psd(3, rng);
    CHECK((entrywise_poly(A, {1.0}, {1}).a - A.a).cwiseAbs().maxCoeff() == 0.0);
    HermMatrix J{all_ones(3)};
    auto f = entrywise_poly(J, {1.0, 1.0, 1.0, -1.0 / 19.0}, {0, 1, 2, 3});
    CHECK(f.a(1, 2).real() == doctest::Approx(56.0 / 19.0).epsilon(1e-14));
    CHECK_THROWS_AS(entrywise_poly(A, {1.0, 1.0}, {2, 2}), DuplicateExponent);
}

TEST_CASE("psd verdicts") {
    auto v = psd_check(HermMatrix{all_ones(3)});
    CHECK(v.is_psd);
    CHECK(v.min_eigenvalue == doctest::Approx(0.0).epsilon(1e-10));
    CMatrix d(2, 2);
    d << 1.0, 0.0, 0.0, -1.0;
    CHECK_FALSE(psd_check(HermMatrix{d}).is_psd);
    CMatrix c(2, 2);
    c << 1.0, I, -I, 1.0;
    auto w = psd_check(HermMatrix{c});
    CHECK(w.is_psd);
    CHECK(w.min_eigenvalue == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("schur product theorem at test scale") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 30; ++rep) {
        int n = 2 + static_cast<int>(rng() % 5);
        HermMatrix A = random_psd(n, rng), B = random_psd(n, rng);
        CHECK(psd_check(hadamard_product(A, B)).is_psd);
    }
}

TEST_CASE("pseudo inverse") {
    HermMatrix id{CMatrix(CMatrix::Identity(3, 3))};
    CHECK((pseudo_inverse(id).a - id.a).cwiseAbs().maxCoeff() <= 1e-12);
    HermMatrix z{CMatrix(CMatrix::Zero(2, 2))};
    CHECK(pseudo_inverse(z).a.cwiseAbs().maxCoeff() == 0.0);
    // (alpha u u*)^dagger = alpha^{-1} u u* for unit u
    CVector u(3);
    u << Complex(0.5, 0.0), Complex(0.0, 0.5), Complex(std::sqrt(0.5), 0.0);
    HermMatrix P{CMatrix(3.0 * (u * u.adjoint()))};
    CMatrix expect = (1.0 / 3.0) * (u * u.adjoint());
    CHECK((pseudo_inverse(P).a - expect).cwiseAbs().maxCoeff() <= 1e-10);
    CMatrix neg(2, 2);
    neg << -1.0, 0.0, 0.0, 1.0;
    CHECK_THROWS_AS(pseudo_inverse(HermMatrix{neg}), NotPsd);
    // Penrose identities on random PSD draws
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 20; ++rep) {
        HermMatrix A = random_psd(4, rng);
        CMatrix Ad = pseudo_inverse(A).a;
        double scale = A.max_abs();
        CHECK((A.a * Ad * A.a - A.a).cwiseAbs().maxCoeff() <= 1e-8 * scale);
        CHECK((Ad * A.a * Ad - Ad).cwiseAbs().maxCoeff() <=
              1e-8 * Ad.cwiseAbs().maxCoeff());
    }
    // square root of the pseudoinverse squares back
    HermMatrix S = random_psd(4, rng);
    CMatrix h = pseudo_inverse_sqrt(S).a;
    CHECK((h * h - pseudo_inverse(S).a).cwiseAbs().maxCoeff() <=
          1e-8 * pseudo_inverse(S).a.cwiseAbs().maxCoeff());
}

TEST_CASE("kernel bases") {
    CHECK(kernel_basis(HermMatrix{CMatrix(CMatrix::Identity(3, 3))}).dim() == 0);
    auto k2 = kernel_basis(HermMatrix{all_ones(2)});
    REQUIRE(k2.dim() == 1);
    CHECK(std::abs(k2.vectors[0](0) + k2.vectors[0](1)) <= 1e-10);
    auto k3 = kernel_basis(HermMatrix{all_ones(3)});
    REQUIRE(k3.dim() == 2);
    for (const auto& v : k3.vectors) {
        CHECK(std::abs(v.sum()) <= 1e-10); // orthogonal to (1,1,1)
        CHECK((all_ones(3) * v).norm() <= 1e-8 * 3.0);
        CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(std::abs((k3.vectors[0].adjoint() * k3.vectors[1])(0, 0)) <= 1e-10);
}

TEST_CASE("rank one factors") {
    CMatrix s(1, 1);
    s << 4.0;
    CHECK(rank_one_factor(HermMatrix{s})(0) == Complex(2.0, 0.0));
    CMatrix m(2, 2);
    m << 1.0, -1.0, -1.0, 1.0;
    CVector u = rank_one_factor(HermMatrix{m});
    CHECK(u(0) == Complex(1.0, 0.0));
    CHECK(std::abs(u(1) - Complex(-1.0, 0.0)) <= 1e-10);
    CMatrix c(2, 2);
    c << 1.0, I, -I, 1.0;
    CVector w = rank_one_factor(HermMatrix{c});
    CHECK(std::abs(w(0) - Complex(1.0, 0.0)) <= 1e-10);
    CHECK(std::abs(w(1) - Complex(0.0, -1.0)) <= 1e-10);
    CHECK(((w * w.adjoint()) - c).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK_THROWS_AS(rank_one_factor(HermMatrix{CMatrix(CMatrix::Identity(2, 2))}),
                    RankExceedsOne);
    CHECK(rank_one_factor(HermMatrix{CMatrix(CMatrix::Zero(2, 2))}).norm() == 0.0);
    // round trip on random rank-one matrices
    std::mt19937_64 rng(6);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        CVector v(4);
        for (int i = 0; i < 4; ++i) v(i) = Complex(g(rng), g(rng));
        HermMatrix A{CMatrix(v * v.adjoint())};
        CVector f = rank_one_factor(A);
        CHECK(((f * f.adjoint()) - A.a).cwiseAbs().maxCoeff() <= 1e-10 * A.max_abs());
    }
}

TEST_CASE("principal angles") {
    auto k3 = kernel_basis(HermMatrix{all_ones(3)});
    CHECK(principal_angle_distance(k3, k3) <= 1e-12);
    KernelBasis other;
    other.dim_ambient = 3;
    CVector e0 = CVector::Zero(3);
    e0(0) = 1.0;
    other.vectors = {e0};
    CHECK(principal_angle_distance(k3, other) == 1.0); // dimension mismatch
    KernelBasis empty_a{3, {}}, empty_b{3, {}};
    CHECK(principal_angle_distance(empty_a, empty_b) == 0.0);
}
