#pragma once

// The three large-m limits of a finite non-reciprocal chain.
//
//   open      sigma(T_{mk}(a))  -> union_alpha sigma(a(e^{-i(alpha + i delta/2)}))
//   periodic  sigma(C_{mk}(a))   = union_j sigma(a(e^{2 pi i j / m})) -> sigma(L(a))
//   pseudo    sigma_eps(T_{mk}(a)) -> sigma_eps(T(a))
//
// plus the set distances used to measure convergence.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "skinband/spectral_set.hpp"
#include "skinband/symbol.hpp"

namespace skinband {

/// sigma(a(e^{-i(alpha + i delta/2)})) over n_alpha uniform alphas.
SpectralSet obc_limit_set(const SymbolCoefficients& s, std::size_t n_alpha);

/// Phase phi = Arg prod r_i of the symmetrizer ratios. With D = diag of the
/// first k symmetrizer entries,
///   D^{-1} a~(e^{-i(alpha + phi)}) D = a(e^{-i(alpha + i delta/2)}),
/// so the OBC limit is the symbol curve of the collapsed symbol traversed
/// from a shifted origin. phi = 0 when every b_i c_i > 0.
double obc_similarity_phase(const SymbolCoefficients& s);

/// Exact sigma(C_{mk}(a)) from the k x k blocks at the m-th roots of unity;
/// never touches the mk x mk matrix. Tagged PBCLimit with (m, j).
SpectralSet pbc_spectrum(const SymbolCoefficients& s, std::size_t m);

/// Dense eigensolve of the circulant matrix, tagged FinitePBC.
SpectralSet finite_pbc_spectrum(const SymbolCoefficients& s, std::size_t m);

/// sigma(a(e^{-i alpha})) over n_alpha uniform alphas (beta = 0).
SpectralSet laurent_spectrum_sample(const SymbolCoefficients& s, std::size_t n_alpha);

/// Eigenvalues of T_{mk}(a). With via_collapse they come from the similar
/// symmetric matrix T_{mk}(collapsed_symbol(s)); the default is to collapse
/// when mk > 20 and the symbol allows it. Direct solves of large non-normal
/// T_{mk}(a) return pseudospectral noise rather than eigenvalues.
SpectralSet finite_obc_spectrum(const SymbolCoefficients& s, std::size_t m,
                                std::optional<bool> via_collapse = std::nullopt);

struct Rectangle {
    double re_min = 0.0;
    double re_max = 0.0;
    double im_min = 0.0;
    double im_max = 0.0;
};

/// sigma_min(T_{mk}(a) - lambda I) sampled on an nx x ny grid that includes
/// the rectangle's edges. values is row-major in y: values[iy * nx + ix].
struct PseudospectrumGrid {
    Rectangle rectangle;
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::size_t cells = 0;
    std::vector<double> values;

    double x(std::size_t ix) const noexcept;
    double y(std::size_t iy) const noexcept;
    double at(std::size_t ix, std::size_t iy) const noexcept { return values[iy * nx + ix]; }
};

/// threads = 0 picks the hardware concurrency. Output does not depend on it.
PseudospectrumGrid pseudospectrum_grid(const SymbolCoefficients& s, std::size_t m, const Rectangle& rect,
                                       std::size_t nx, std::size_t ny, unsigned threads = 0);

struct HausdorffResult {
    double distance = 0.0;
    double forward = 0.0;   // sup over the first set of the distance to the second
    double backward = 0.0;  // sup over the second set of the distance to the first
};

double directed_hausdorff(std::span<const cplx> from, std::span<const cplx> to);
HausdorffResult hausdorff_distance(std::span<const cplx> lhs, std::span<const cplx> rhs);
HausdorffResult hausdorff_distance(const SpectralSet& lhs, const SpectralSet& rhs);

struct ConvergenceTargets {
    bool obc = true;
    bool pbc = true;
};

/// One row per m. Columns that were not requested hold NaN.
struct ConvergenceRow {
    std::size_t m = 0;
    double d_obc_directed = 0.0;        // sup over sigma(T_{mk}) of the distance to the OBC limit sample
    double d_obc_sampling_bound = 0.0;  // discretisation error of that sample
    double d_pbc = 0.0;                 // sup over dense sigma(C_{mk}) of the distance to the block union
};

std::vector<ConvergenceRow> convergence_study(const SymbolCoefficients& s, std::span<const std::size_t> m_list,
                                              ConvergenceTargets targets = {}, std::size_t n_alpha = 4001);

}  // namespace skinband
