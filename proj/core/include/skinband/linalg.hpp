#pragma once

// Dense complex linear algebra used throughout the library: a square matrix
// type, a Hessenberg/shifted-QR eigensolver, the smallest singular value and
// a numerically stable quadratic solver. Everything here is pure and
// single-threaded.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace skinband {

using cplx = std::complex<double>;

/// Square complex matrix, row-major storage.
class DenseComplexMatrix {
public:
    DenseComplexMatrix() = default;
    explicit DenseComplexMatrix(std::size_t order);

    static DenseComplexMatrix identity(std::size_t order);
    static DenseComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

    std::size_t order() const noexcept { return n_; }

    cplx& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * n_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }

    std::span<const cplx> entries() const noexcept { return a_; }

    double frobenius_norm() const noexcept;
    bool all_finite() const noexcept;

    /// A - lambda I
    DenseComplexMatrix shifted(cplx lambda) const;
    std::vector<cplx> apply(std::span<const cplx> x) const;

    friend DenseComplexMatrix operator*(const DenseComplexMatrix& lhs, const DenseComplexMatrix& rhs);
    friend DenseComplexMatrix operator-(const DenseComplexMatrix& lhs, const DenseComplexMatrix& rhs);

private:
    std::size_t n_ = 0;
    std::vector<cplx> a_;
};

struct EigenResult {
    std::vector<cplx> eigenvalues;
    /// Column i is a unit eigenvector for eigenvalues[i].
    std::optional<DenseComplexMatrix> eigenvectors;
    /// max_i ||A v_i - lambda_i v_i|| / ||A||_F when vectors were requested,
    /// otherwise the unit-roundoff estimate n * eps of the Schur reduction.
    double backward_error = 0.0;
};

/// All n eigenvalues of a general complex matrix (with multiplicity), via
/// Householder reduction to Hessenberg form and Wilkinson-shifted QR.
/// Eigenvectors, when requested, come from three steps of inverse iteration
/// and satisfy ||A v - lambda v|| <= 1e-10 * n * ||A||_F.
EigenResult eig_dense(const DenseComplexMatrix& a, bool want_vectors = false);

/// Shorthand for eig_dense(a).eigenvalues.
std::vector<cplx> eigenvalues(const DenseComplexMatrix& a);

/// Unit vector from three steps of inverse iteration on A - lambda I.
std::vector<cplx> inverse_iteration(const DenseComplexMatrix& a, cplx lambda);

/// sigma_min(A). Values below roughly 1e-16 ||A||_F are rounding noise and
/// should be read as zero.
double smallest_singular_value(const DenseComplexMatrix& a);

/// det(A) by LU with partial pivoting.
cplx determinant(const DenseComplexMatrix& a);

/// Both roots of c2 z^2 + c1 z + c0 = 0. The second root is formed as
/// c0 / (c2 * first) so the product matches Vieta to rounding.
std::pair<cplx, cplx> solve_quadratic(cplx c2, cplx c1, cplx c0);

}  // namespace skinband
