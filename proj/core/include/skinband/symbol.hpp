#pragma once

// Tridiagonal k-Toeplitz symbols
//
//          | a_1      b_1                      c_k z |
//          | c_1      a_2     b_2                    |
//   a(z) = |          ...     ...     ...            |
//          |                  c_{k-2} a_{k-1} b_{k-1}|
//          | b_k/z                    c_{k-1} a_k    |
//
// and the scalar functions derived from them. det(a(z) - lambda) splits as
// psi(z) + g(lambda) with
//
//   psi(z) = (-1)^{k+1} ((prod c_i) z + (prod b_i) / z),
//
// so the determinant curve over |z| = e^beta is an ellipse E_beta. The
// ellipse is described by EllipseGeometry; the non-reciprocity rate
// delta = ln prod |b_i / c_i| sets the range of admissible decay rates.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "skinband/linalg.hpp"

namespace skinband {

/// Diagonals (a_i, b_i, c_i), i = 1..k, of a tridiagonal k-Toeplitz operator.
/// Immutable once constructed.
class SymbolCoefficients {
public:
    SymbolCoefficients(std::vector<cplx> diag, std::vector<cplx> upper, std::vector<cplx> lower,
                       double spatial_period = 1.0);

    std::size_t k() const noexcept { return diag_.size(); }
    std::span<const cplx> diag() const noexcept { return diag_; }
    std::span<const cplx> upper() const noexcept { return upper_; }
    std::span<const cplx> lower() const noexcept { return lower_; }
    double spatial_period() const noexcept { return period_; }

    /// True when some b_i or c_i is zero; GBZ operations reject such symbols.
    bool reciprocal_degenerate() const noexcept { return degenerate_; }
    /// Throws ErrorKind::ReciprocalDegenerate naming `op`.
    void require_nondegenerate(std::string_view op) const;

    cplx upper_product() const noexcept;
    cplx lower_product() const noexcept;

private:
    std::vector<cplx> diag_;
    std::vector<cplx> upper_;
    std::vector<cplx> lower_;
    double period_;
    bool degenerate_;
};

struct EllipseGeometry {
    double a_plus = 0.0;   // prod |b_j|
    double a_minus = 0.0;  // prod |c_j|
    cplx rotation{1.0, 0.0};  // K = (-1)^{k+1} prod sqrt(b_j c_j / |b_j c_j|), principal branches
    double zeta = 0.0;     // Arg prod (b_j / c_j), in [-pi, pi)
    double delta = 0.0;    // ln(a_plus / a_minus)

    /// Semi-axis of E_beta along the real direction of xi / K.
    double real_semi_axis(double beta = 0.0) const noexcept;
    /// Signed semi-axis along the imaginary direction; zero at beta = delta / 2.
    double imag_semi_axis(double beta = 0.0) const noexcept;
    /// Absolute tolerance for "on the boundary of E_beta" decisions.
    double boundary_tolerance(double beta = 0.0) const noexcept;
    bool collapsed() const noexcept;
};

enum class Membership { Interior, Boundary, Exterior };

std::string_view to_string(Membership m) noexcept;

/// (alpha, beta) in physical units: z = exp(-i L (alpha + i beta)), |z| = e^{L beta}.
struct Quasiperiodicity {
    double alpha = 0.0;
    double beta = 0.0;

    cplx associated_point(double spatial_period = 1.0) const noexcept;
};

/// a(z) as a k x k matrix. For k = 1 the three contributions share one entry.
DenseComplexMatrix evaluate(const SymbolCoefficients& s, cplx z);

cplx psi(const SymbolCoefficients& s, cplx z);

/// g(lambda) = det(a(1) - lambda) - psi(1); a polynomial of degree k.
cplx g_polynomial(const SymbolCoefficients& s, cplx lambda);

EllipseGeometry ellipse_geometry(const SymbolCoefficients& s);

/// delta = 0 to 1e-12; for nonzero off-diagonals this is the collapsed case.
bool is_collapsed(const SymbolCoefficients& s);

/// Classify xi against E_beta (the ellipse traced by psi on |z| = e^beta,
/// interior included). Degenerate ellipses are treated as segments.
Membership ellipse_membership(const EllipseGeometry& e, cplx xi, double beta = 0.0);

/// Reduce an angle into [-pi, pi).
double wrap_angle(double theta) noexcept;

}  // namespace skinband
