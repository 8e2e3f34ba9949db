#pragma once

// Eigenmodes of tridiagonal k-Toeplitz operators.
//
// If v spans ker(a(z) - lambda), the quasiperiodic extension
// (v, z^{-1} v, z^{-2} v, ...) satisfies T(a) u = lambda u in every row but
// the first. Combining the extensions at the two roots z_1, z_2 of
// psi(z) + g(lambda) = 0 so that the first-row defects cancel gives an
// eigenvector of T(a), in the formal sense when it grows.

#include <cstddef>
#include <span>
#include <vector>

#include "skinband/gbz.hpp"
#include "skinband/linalg.hpp"
#include "skinband/symbol.hpp"

namespace skinband {

struct QuasiperiodicMode {
    std::vector<cplx> base;     // one unit cell
    cplx z{1.0, 0.0};
    std::size_t length = 0;     // cells
    std::vector<cplx> samples;  // block j is z^{-j} base
};

QuasiperiodicMode quasiperiodic_extension(std::span<const cplx> base, cplx z, std::size_t m);

struct SymbolicEigenvector {
    QuasiperiodicPair quasiperiodicities;
    QuasiperiodicMode first;
    QuasiperiodicMode second;
    cplx gamma_first;
    cplx gamma_second;
    std::vector<cplx> rendered;  // gamma_first * first + gamma_second * second
    /// max over rows 1 .. mk-1 of |((T_{mk} - lambda) u)_i|, divided by
    /// (||a(1)||_F + |lambda|) max_i |u_i|. The last row is cut by truncation.
    double residual = 0.0;
};

/// top_left_shift perturbs entry (1, 1) of T(a); only the gammas change.
SymbolicEigenvector symbolic_eigenvector(const SymbolCoefficients& s, cplx lambda, std::size_t m_render,
                                         cplx top_left_shift = {});

struct DecayFit {
    double beta = 0.0;      // decay per unit cell, positive when |u| shrinks along the chain
    double residual = 0.0;  // rms deviation of ln(cell max) from the fitted line
    std::size_t window_begin = 0;
    std::size_t window_end = 0;  // exclusive
};

/// Least-squares fit of ln(max_r |u_{jk + r}|) against j over the middle half
/// of the cells.
DecayFit decay_rate(std::span<const cplx> u, std::size_t k);

struct DimensionCheck {
    bool verified = false;
    double collinearity = 0.0;  // |<u, v>| / (|u| |v|)
};

/// Rebuilds the eigenvector of a tridiagonal M for lambda from u_1 = 1 by the
/// three-term recursion and compares it with the eigensolver's vector. The
/// recursion leaves no freedom, so collinearity confirms a one-dimensional
/// eigenspace.
DimensionCheck eigenspace_dimension_check(const DenseComplexMatrix& m, cplx lambda);

struct FiniteMode {
    cplx eigenvalue;
    std::vector<cplx> vector;
};

/// Eigenpairs of T_{mk}(a): eigenvalues via the collapsed symbol, vectors by
/// inverse iteration on T_{mk}(a) itself. Intended for m up to about 40.
std::vector<FiniteMode> obc_eigenmodes(const SymbolCoefficients& s, std::size_t m);

}  // namespace skinband
