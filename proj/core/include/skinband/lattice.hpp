#pragma once

#include <cstddef>
#include <vector>

#include "skinband/linalg.hpp"
#include "skinband/symbol.hpp"

namespace skinband {

enum class Boundary { Open, Periodic };

/// A finite chain of m unit cells: T_{mk}(a) for open boundaries or the
/// k-circulant C_{mk}(a) for periodic ones.
struct FiniteLattice {
    std::size_t cells = 0;
    DenseComplexMatrix matrix;
    Boundary kind = Boundary::Open;
};

/// Order-mk truncation of T(a): diagonal, super- and subdiagonal cycle
/// through a_i, b_i and c_i.
FiniteLattice toeplitz_matrix(const SymbolCoefficients& s, std::size_t m);

/// toeplitz_matrix plus the corners (1, mk) = c_k and (mk, 1) = b_k.
/// Requires m >= 2; a single cell would stack the corners on the band.
FiniteLattice circulant_matrix(const SymbolCoefficients& s, std::size_t m);

/// Symmetric symbol with the same finite OBC spectra: diagonal a_i and both
/// off-diagonals b_i / r_i = c_i r_i, where r_i is the principal square root
/// of b_i / c_i. Squares to b_i c_i, and a symmetric s is a fixed point.
SymbolCoefficients collapsed_symbol(const SymbolCoefficients& s);

/// Principal square roots r_i = sqrt(b_i / c_i), the per-bond ratios of the
/// symmetrizer.
std::vector<cplx> symmetrizer_ratios(const SymbolCoefficients& s);

/// Diagonal of D_{mk}: D_11 = 1, D_{i+1,i+1} = r_{i mod k} D_ii, so that
/// D T_{mk}(a) D^{-1} = T_{mk}(collapsed_symbol(s)) entrywise. Refuses when
/// the entries would reach e^600; use collapsed_symbol instead there.
std::vector<cplx> symmetrizer(const SymbolCoefficients& s, std::size_t m);

}  // namespace skinband
