#pragma once

// Generalised Brillouin zone: spectral classification of points against the
// semi-infinite operator T(a), winding numbers of the determinant curve, and
// the pair of complex quasimomenta attached to every spectral point.
//
// For lambda in sigma(T(a)) (up to at most k - 1 exceptional points that are
// not located here) the equation psi(z) = -g(lambda) has exactly two roots
//
//     z  = e^{-i(alpha + i beta)},       beta  in [0, delta/2]
//     z' = e^{-i(alpha' + i beta')},     alpha' = -zeta - alpha,  beta' = delta - beta
//
// and sigma(T(a)) is the union of sigma(a(z)) over alpha in [-pi, pi),
// beta in [0, delta]. All angles below are in units where the spatial period
// is 1; the public Quasiperiodicity values are divided by L.

#include <cstddef>
#include <string_view>

#include "skinband/spectral_set.hpp"
#include "skinband/symbol.hpp"

namespace skinband {

struct GeneralisedBrillouinZone {
    double alpha_min = 0.0;  // -pi / L
    double alpha_max = 0.0;  // pi / L, excluded
    double beta_min = 0.0;   // 0, or delta / L when delta < 0
    double beta_max = 0.0;
    EllipseGeometry source;

    bool classical() const noexcept { return beta_min == beta_max; }
    bool contains(const Quasiperiodicity& q) const noexcept;
};

GeneralisedBrillouinZone generalised_brillouin_zone(const SymbolCoefficients& s);

enum class SpectralTag { DetBoundary, WindingInterior, Exterior };

std::string_view to_string(SpectralTag tag) noexcept;

struct SpectralClassification {
    SpectralTag tag = SpectralTag::Exterior;
    int winding = 0;
};

/// Winding number about 0 of theta -> det(a(e^{i theta}) - lambda), by
/// accumulating principal phase increments. The grid is doubled until every
/// increment is below pi/2.
int winding_number(const SymbolCoefficients& s, cplx lambda, std::size_t n_points = 256);

/// DetBoundary when -g(lambda) lies on the ellipse boundary, WindingInterior
/// inside (winding checked nonzero), Exterior outside (winding checked zero).
SpectralClassification classify(const SymbolCoefficients& s, cplx lambda);

struct QuasiperiodicPair {
    /// |beta| <= |delta|/2 (the slower-decaying partner) comes first.
    Quasiperiodicity first;
    Quasiperiodicity second;
    cplx z_first;
    cplx z_second;
};

/// The two roots of psi(z) + g(lambda) = 0 expressed as quasimomenta.
/// Checks the conjugacy relations and that lambda is an eigenvalue of a(z)
/// at both roots.
QuasiperiodicPair locate_quasiperiodicities(const SymbolCoefficients& s, cplx lambda);

/// Union of sigma(a(e^{-i(alpha + i beta)})) over n_alpha uniform alphas in
/// [-pi, pi) and n_beta uniform betas spanning [0, delta/2]. With full_zone
/// the conjugate half [delta/2, delta] is added by reflection. Up to k - 1
/// exceptional points of sigma(T(a)) may be missing from the sample.
SpectralSet toeplitz_spectrum_sample(const SymbolCoefficients& s, std::size_t n_alpha, std::size_t n_beta,
                                     bool full_zone = false);

}  // namespace skinband
