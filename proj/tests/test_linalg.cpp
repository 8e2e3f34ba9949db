#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "skinband/error.hpp"
#include "skinband/lattice.hpp"
#include "skinband/linalg.hpp"
#include "skinband/spectral_set.hpp"
#include "support.hpp"

using namespace skinband;
using support::prototype;

namespace {

double vec_norm(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const cplx& x : v) s += std::norm(x);
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("eig_dense: diagonal matrix") {
    const auto a = DenseComplexMatrix::from_rows({{2.0, 0.0}, {0.0, 3.0}});
    const auto ev = support::sorted(eigenvalues(a));
    CHECK(std::abs(ev[0] - cplx{2.0}) < 1e-14);
    CHECK(std::abs(ev[1] - cplx{3.0}) < 1e-14);
}

TEST_CASE("eig_dense: prototype symbol at z = 1 has eigenvalues +-i sqrt(0.21)") {
    const auto a = DenseComplexMatrix::from_rows({{0.0, -2.1}, {0.1, 0.0}});
    const std::vector<cplx> expected{{0.0, -std::sqrt(0.21)}, {0.0, std::sqrt(0.21)}};
    CHECK(matching_distance(eigenvalues(a), expected) < 1e-14);
}

TEST_CASE("eig_dense: open prototype chain of two cells against companion-matrix roots") {
    const DenseComplexMatrix t = toeplitz_matrix(prototype(), 2).matrix;
    CHECK(matching_distance(eigenvalues(t), support::companion_roots(t)) < 1e-10);
}

TEST_CASE("eig_dense: random matrices keep trace and determinant") {
    std::mt19937_64 rng(11);
    for (std::size_t n : {1u, 2u, 3u, 7u, 16u, 33u, 50u}) {
        const DenseComplexMatrix a = support::random_matrix(rng, n);
        const auto ev = eigenvalues(a);
        REQUIRE(ev.size() == n);
        cplx sum{};
        cplx prod{1.0};
        cplx trace{};
        for (std::size_t i = 0; i < n; ++i) {
            sum += ev[i];
            prod *= ev[i];
            trace += a(i, i);
        }
        const cplx det = support::to_eigen(a).partialPivLu().determinant();
        CHECK(std::abs(sum - trace) <= 1e-8 * a.frobenius_norm());
        CHECK(std::abs(prod - det) <= 1e-6 * std::abs(det));
        CHECK(matching_distance(ev, support::eigen_eigenvalues(a)) < 1e-8);
    }
}

TEST_CASE("eig_dense: eigenvector residual bound holds for every pair") {
    std::mt19937_64 rng(12);
    for (std::size_t n : {2u, 5u, 12u, 30u}) {
        const DenseComplexMatrix a = support::random_matrix(rng, n);
        const EigenResult r = eig_dense(a, true);
        REQUIRE(r.eigenvectors.has_value());
        const double tol = 1e-10 * static_cast<double>(n) * a.frobenius_norm();
        for (std::size_t col = 0; col < n; ++col) {
            std::vector<cplx> v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = (*r.eigenvectors)(i, col);
            CHECK(std::abs(vec_norm(v) - 1.0) < 1e-12);
            auto av = a.apply(v);
            for (std::size_t i = 0; i < n; ++i) av[i] -= r.eigenvalues[col] * v[i];
            CHECK(vec_norm(av) <= tol);
        }
        CHECK(r.backward_error <= 1e-10 * static_cast<double>(n));
    }
}

TEST_CASE("eig_dense: Jordan block and zero matrix") {
    const auto jordan = DenseComplexMatrix::from_rows({{1.0, 1.0}, {0.0, 1.0}});
    for (const cplx& ev : eigenvalues(jordan)) CHECK(std::abs(ev - cplx{1.0}) < 1e-7);
    const DenseComplexMatrix zero(4);
    for (const cplx& ev : eigenvalues(zero)) CHECK(ev == cplx{});
}

TEST_CASE("eig_dense: non-finite entries are rejected") {
    auto a = DenseComplexMatrix::identity(3);
    a(1, 2) = std::numeric_limits<double>::quiet_NaN();
    try {
        (void)eigenvalues(a);
        FAIL("expected an error");
    } catch (const SpectralError& e) {
        CHECK(e.kind() == ErrorKind::InvalidInput);
    }
}

TEST_CASE("smallest_singular_value: identity and rank-deficient") {
    CHECK(std::abs(smallest_singular_value(DenseComplexMatrix::identity(5)) - 1.0) < 1e-13);
    const auto a = DenseComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}});
    CHECK(smallest_singular_value(a) < 1e-14 * a.frobenius_norm());
}

TEST_CASE("smallest_singular_value: open prototype chain of ten cells against an SVD oracle") {
    const DenseComplexMatrix t = toeplitz_matrix(prototype(), 10).matrix;
    const double oracle = support::eigen_sigma_min(t);
    CHECK(std::abs(smallest_singular_value(t) - oracle) < 1e-6 * oracle);
}

TEST_CASE("smallest_singular_value: random matrices and probe bound") {
    std::mt19937_64 rng(13);
    for (std::size_t n : {1u, 3u, 8u, 20u, 40u}) {
        const DenseComplexMatrix a = support::random_matrix(rng, n);
        const double s = smallest_singular_value(a);
        const double oracle = support::eigen_sigma_min(a);
        CHECK(std::abs(s - oracle) <= 1e-8 * oracle + 1e-14 * a.frobenius_norm());
        for (int probe = 0; probe < 20; ++probe) {
            std::vector<cplx> x(n);
            for (auto& v : x) v = support::random_complex(rng);
            const double nx = vec_norm(x);
            for (auto& v : x) v /= nx;
            CHECK(s <= vec_norm(a.apply(x)) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("smallest_singular_value: graded singular values") {
    // U diag(1, 1e-3, 1e-6, 1e-9) V^H with random unitary U, V
    std::mt19937_64 rng(14);
    Eigen::MatrixXcd g(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) g(i, j) = support::random_complex(rng);
    }
    const Eigen::MatrixXcd u = g.householderQr().householderQ();
    const Eigen::MatrixXcd v = g.adjoint().householderQr().householderQ();
    Eigen::VectorXcd d(4);
    d << 1.0, 1e-3, 1e-6, 1e-9;
    const Eigen::MatrixXcd a = u * d.asDiagonal() * v.adjoint();
    DenseComplexMatrix m(4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) m(i, j) = a(i, j);
    }
    CHECK(std::abs(smallest_singular_value(m) - 1e-9) < 1e-6 * 1e-9 + 1e-15);
}

TEST_CASE("determinant: agrees with LU oracle") {
    std::mt19937_64 rng(15);
    const DenseComplexMatrix a = support::random_matrix(rng, 9);
    const cplx det = support::to_eigen(a).partialPivLu().determinant();
    CHECK(std::abs(determinant(a) - det) < 1e-10 * std::abs(det));
}

TEST_CASE("solve_quadratic: textbook roots") {
    auto [r1, r2] = solve_quadratic(1.0, 0.0, -1.0);
    CHECK(matching_distance(std::vector<cplx>{r1, r2}, std::vector<cplx>{1.0, -1.0}) < 1e-15);
    std::tie(r1, r2) = solve_quadratic(1.0, -3.0, 2.0);
    CHECK(matching_distance(std::vector<cplx>{r1, r2}, std::vector<cplx>{1.0, 2.0}) < 1e-15);
}

TEST_CASE("solve_quadratic: prototype at lambda = 0 has root product -200/9") {
    const auto [r1, r2] = solve_quadratic(-0.09, -1.7, 2.0);
    CHECK(std::abs(r1 * r2 - cplx{-200.0 / 9.0}) < 1e-12 * 200.0 / 9.0);
}

TEST_CASE("solve_quadratic: vanishing leading coefficient is an error") {
    CHECK_THROWS_AS(solve_quadratic(0.0, 1.0, 1.0), SpectralError);
}

TEST_CASE("solve_quadratic: residual bound and Vieta product on random coefficients") {
    std::mt19937_64 rng(16);
    std::uniform_real_distribution<double> scale(-6.0, 6.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const cplx c2 = support::random_complex(rng) * std::pow(10.0, scale(rng));
        const cplx c1 = support::random_complex(rng) * std::pow(10.0, scale(rng));
        const cplx c0 = support::random_complex(rng) * std::pow(10.0, scale(rng));
        if (c2 == cplx{}) continue;
        const auto [r1, r2] = solve_quadratic(c2, c1, c0);
        const double cmax = std::max({std::abs(c2), std::abs(c1), std::abs(c0)});
        for (const cplx r : {r1, r2}) {
            CHECK(std::abs(c2 * r * r + c1 * r + c0) <= 1e-12 * cmax * (1.0 + std::norm(r)));
        }
        CHECK(std::abs(r1 * r2 - c0 / c2) <= 1e-12 * std::abs(c0 / c2));
    }
}

TEST_CASE("matching_distance: bottleneck assignment") {
    const std::vector<cplx> a{0.0, 1.0};
    const std::vector<cplx> b{1.1, 0.2};
    CHECK(matching_distance(a, b) == doctest::Approx(0.2));
    CHECK(matching_distance(a, a) == 0.0);
    CHECK_THROWS_AS(matching_distance(a, std::vector<cplx>{0.0}), SpectralError);
}
