#pragma once

// Shared fixtures and independent oracles for the unit tests. Oracles use
// Eigen so they share no code with the library's own solvers.

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "skinband/linalg.hpp"
#include "skinband/symbol.hpp"

namespace support {

using skinband::cplx;
using skinband::DenseComplexMatrix;
using skinband::SymbolCoefficients;

inline SymbolCoefficients prototype() { return SymbolCoefficients({0.0, 0.0}, {-2.0, 1.0}, {-0.9, -0.1}); }

inline SymbolCoefficients hermitian() {
    return SymbolCoefficients({0.0, 0.0}, {cplx{1, 1}, 2.0}, {cplx{1, -1}, 2.0});
}

inline SymbolCoefficients scalar_chain() { return SymbolCoefficients({0.0}, {2.0}, {0.5}); }

inline cplx random_complex(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    return {u(rng), u(rng)};
}

// Off-diagonals bounded away from zero so GBZ operations apply.
inline SymbolCoefficients random_symbol(std::mt19937_64& rng, std::size_t k) {
    std::uniform_real_distribution<double> mag(0.3, 2.0);
    std::uniform_real_distribution<double> phase(-3.14159, 3.14159);
    std::vector<cplx> a(k);
    std::vector<cplx> b(k);
    std::vector<cplx> c(k);
    for (std::size_t i = 0; i < k; ++i) {
        a[i] = random_complex(rng);
        b[i] = std::polar(mag(rng), phase(rng));
        c[i] = std::polar(mag(rng), phase(rng));
    }
    return SymbolCoefficients(a, b, c);
}

inline DenseComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
    DenseComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = random_complex(rng);
    }
    return m;
}

inline Eigen::MatrixXcd to_eigen(const DenseComplexMatrix& m) {
    const auto n = static_cast<Eigen::Index>(m.order());
    Eigen::MatrixXcd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
    return out;
}

inline std::vector<cplx> eigen_eigenvalues(const DenseComplexMatrix& m) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), false);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

inline double eigen_sigma_min(const DenseComplexMatrix& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
    return svd.singularValues().minCoeff();
}

// Characteristic polynomial coefficients (monic, highest degree first) by
// Faddeev-LeVerrier, then roots from the companion matrix.
inline std::vector<cplx> companion_roots(const DenseComplexMatrix& m) {
    const Eigen::MatrixXcd a = to_eigen(m);
    const Eigen::Index n = a.rows();
    std::vector<cplx> coeff(static_cast<std::size_t>(n) + 1);
    coeff[0] = 1.0;
    Eigen::MatrixXcd mk = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        mk = a * mk + coeff[static_cast<std::size_t>(k) - 1] * Eigen::MatrixXcd::Identity(n, n);
        coeff[static_cast<std::size_t>(k)] = -(a * mk).trace() / static_cast<double>(k);
    }
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) comp(0, j) = -coeff[static_cast<std::size_t>(j) + 1];
    for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

// Canonical order for comparing well-separated point sets elementwise.
inline std::vector<cplx> sorted(std::vector<cplx> v) {
    std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
        if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return v;
}

inline double brute_directed(const std::vector<cplx>& from, const std::vector<cplx>& to) {
    double worst = 0.0;
    for (const cplx& p : from) {
        double best = 1e300;
        for (const cplx& q : to) best = std::min(best, std::abs(p - q));
        worst = std::max(worst, best);
    }
    return worst;
}

inline double max_abs_diff(const DenseComplexMatrix& a, const DenseComplexMatrix& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.order(); ++i) {
        for (std::size_t j = 0; j < a.order(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
    }
    return d;
}

}  // namespace support
