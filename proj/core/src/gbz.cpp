#include "skinband/gbz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "detail/sampling.hpp"
#include "skinband/error.hpp"

namespace skinband {

namespace {

constexpr std::size_t kMaxWindingPoints = std::size_t{1} << 22;

double eigen_distance(const DenseComplexMatrix& m, cplx lambda) {
    double best = std::numeric_limits<double>::infinity();
    for (const cplx& ev : eigenvalues(m)) best = std::min(best, std::abs(ev - lambda));
    return best;
}

// lambda in sigma(a(z)): forward check on the eigenvalues, falling back to a
// relative determinant residual where a(z) is close to defective.
bool is_symbol_eigenvalue(const SymbolCoefficients& s, cplx z, cplx lambda) {
    const DenseComplexMatrix az = evaluate(s, z);
    const double scale = std::max(1.0, az.frobenius_norm());
    if (eigen_distance(az, lambda) <= 1e-8 * scale) return true;
    const DenseComplexMatrix shifted = az.shifted(lambda);
    const double det_scale = std::pow(shifted.frobenius_norm(), static_cast<double>(s.k()));
    return std::abs(determinant(shifted)) <= 1e-12 * std::max(det_scale, 1e-300);
}

}  // namespace

bool GeneralisedBrillouinZone::contains(const Quasiperiodicity& q) const noexcept {
    return q.alpha >= alpha_min && q.alpha < alpha_max && q.beta >= beta_min && q.beta <= beta_max;
}

GeneralisedBrillouinZone generalised_brillouin_zone(const SymbolCoefficients& s) {
    GeneralisedBrillouinZone zone;
    zone.source = ellipse_geometry(s);
    const double period = s.spatial_period();
    zone.alpha_min = -std::numbers::pi / period;
    zone.alpha_max = std::numbers::pi / period;
    const double delta = zone.source.collapsed() ? 0.0 : zone.source.delta;
    zone.beta_min = std::min(0.0, delta / period);
    zone.beta_max = std::max(0.0, delta / period);
    return zone;
}

std::string_view to_string(SpectralTag tag) noexcept {
    switch (tag) {
        case SpectralTag::DetBoundary: return "DetBoundary";
        case SpectralTag::WindingInterior: return "WindingInterior";
        case SpectralTag::Exterior: return "Exterior";
    }
    return "Unknown";
}

int winding_number(const SymbolCoefficients& s, cplx lambda, std::size_t n_points) {
    if (n_points < 64) {
        throw SpectralError(ErrorKind::InvalidInput, "winding_number: n_points must be at least 64");
    }
    if (!s.reciprocal_degenerate()) {
        const EllipseGeometry e = ellipse_geometry(s);
        if (ellipse_membership(e, -g_polynomial(s, lambda)) == Membership::Boundary) {
            std::ostringstream msg;
            msg << "winding_number: lambda = " << lambda << " lies on the symbol curve";
            throw SpectralError(ErrorKind::OnBoundary, msg.str());
        }
    }

    for (std::size_t n = n_points; n <= kMaxWindingPoints; n *= 2) {
        std::vector<cplx> f(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
            f[j] = determinant(evaluate(s, std::polar(1.0, theta)).shifted(lambda));
            if (f[j] == cplx{}) {
                throw SpectralError(ErrorKind::OnBoundary, "winding_number: determinant vanishes on the unit circle");
            }
        }
        double total = 0.0;
        double max_step = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double step = std::arg(f[(j + 1) % n] / f[j]);
            total += step;
            max_step = std::max(max_step, std::abs(step));
        }
        if (max_step >= 0.5 * std::numbers::pi) continue;
        const double turns = total / (2.0 * std::numbers::pi);
        const double rounded = std::round(turns);
        if (std::abs(turns - rounded) >= 0.01) {
            std::ostringstream msg;
            msg << "winding_number: accumulated phase " << turns << " turns is not near an integer";
            throw SpectralError(ErrorKind::NonConvergence, msg.str());
        }
        return static_cast<int>(rounded);
    }
    std::ostringstream msg;
    msg << "winding_number: phase steps still exceed pi/2 at " << kMaxWindingPoints << " points (lambda = " << lambda
        << ")";
    throw SpectralError(ErrorKind::NonConvergence, msg.str());
}

SpectralClassification classify(const SymbolCoefficients& s, cplx lambda) {
    const EllipseGeometry e = ellipse_geometry(s);
    const Membership m = ellipse_membership(e, -g_polynomial(s, lambda));
    if (m == Membership::Boundary) return {SpectralTag::DetBoundary, 0};

    const int w = winding_number(s, lambda);
    const bool interior = (m == Membership::Interior);
    if (interior != (w != 0)) {
        std::ostringstream msg;
        msg << "classify: ellipse membership says " << to_string(m) << " but winding number is " << w
            << " at lambda = " << lambda;
        throw SpectralError(ErrorKind::Inconsistency, msg.str());
    }
    return interior ? SpectralClassification{SpectralTag::WindingInterior, w}
                    : SpectralClassification{SpectralTag::Exterior, 0};
}

QuasiperiodicPair locate_quasiperiodicities(const SymbolCoefficients& s, cplx lambda) {
    const EllipseGeometry e = ellipse_geometry(s);
    if (classify(s, lambda).tag == SpectralTag::Exterior) {
        std::ostringstream msg;
        msg << "locate_quasiperiodicities: lambda = " << lambda << " is outside the spectrum of T(a)";
        throw SpectralError(ErrorKind::InvalidInput, msg.str());
    }
    const double sign = (s.k() % 2 == 1) ? 1.0 : -1.0;
    const cplx quad = sign * s.lower_product();
    const cplx constant = sign * s.upper_product();
    auto [z1, z2] = solve_quadratic(quad, g_polynomial(s, lambda), constant);

    const double delta = e.delta;
    auto to_q = [](cplx z) { return Quasiperiodicity{wrap_angle(-std::arg(z)), std::log(std::abs(z))}; };
    Quasiperiodicity q1 = to_q(z1);
    Quasiperiodicity q2 = to_q(z2);
    const bool swap = std::abs(q1.beta) > std::abs(delta - q1.beta) ||
                      (std::abs(q1.beta) == std::abs(delta - q1.beta) && q1.alpha > q2.alpha);
    if (swap) {
        std::swap(q1, q2);
        std::swap(z1, z2);
    }

    const double tol = 1e-9 * std::max(1.0, std::abs(delta));
    std::ostringstream problem;
    if (std::abs(q1.beta + q2.beta - delta) > tol) {
        problem << "beta_1 + beta_2 = " << q1.beta + q2.beta << " differs from delta = " << delta;
    } else if (std::abs(wrap_angle(q1.alpha + q2.alpha + e.zeta)) > 1e-9) {
        problem << "alpha_1 + alpha_2 = " << q1.alpha + q2.alpha << " is not -zeta mod 2 pi";
    } else {
        const double lo = std::min(0.0, delta) - tol;
        const double hi = std::max(0.0, delta) + tol;
        for (const auto* q : {&q1, &q2}) {
            if (q->beta < lo || q->beta > hi) {
                problem << "beta = " << q->beta << " outside [0, delta]";
                break;
            }
        }
    }
    if (problem.tellp() == 0) {
        for (const cplx z : {z1, z2}) {
            if (!is_symbol_eigenvalue(s, z, lambda)) {
                problem << "lambda is not an eigenvalue of a(z) at z = " << z;
                break;
            }
        }
    }
    if (problem.tellp() != 0) {
        throw SpectralError(ErrorKind::Inconsistency, "locate_quasiperiodicities: " + problem.str());
    }

    const double period = s.spatial_period();
    q1.alpha /= period;
    q1.beta /= period;
    q2.alpha /= period;
    q2.beta /= period;
    return {q1, q2, z1, z2};
}

SpectralSet toeplitz_spectrum_sample(const SymbolCoefficients& s, std::size_t n_alpha, std::size_t n_beta,
                                     bool full_zone) {
    if (n_alpha < 8 || n_beta < 1) {
        throw SpectralError(ErrorKind::InvalidInput, "toeplitz_spectrum_sample: need n_alpha >= 8 and n_beta >= 1");
    }
    const EllipseGeometry e = ellipse_geometry(s);
    const double delta = e.collapsed() ? 0.0 : e.delta;
    const double period = s.spatial_period();

    SpectralSet out;
    for (std::size_t j = 0; j < n_beta; ++j) {
        const double beta =
            (n_beta == 1) ? 0.0 : 0.5 * delta * static_cast<double>(j) / static_cast<double>(n_beta - 1);
        out.append(detail::sample_alpha_slice(s, n_alpha, beta, Source::ToeplitzSample));
        if (!full_zone || j + 1 == n_beta || delta == 0.0) continue;
        // conjugate slice: same spectra, partner quasimomenta
        const double beta_c = delta - beta;
        for (std::size_t i = 0; i < n_alpha; ++i) {
            const double alpha = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(i) /
                                                         static_cast<double>(n_alpha);
            const double alpha_c = wrap_angle(-e.zeta - alpha);
            const cplx z = std::exp(cplx{beta_c, -alpha_c});
            for (const cplx& lam : eigenvalues(evaluate(s, z))) {
                out.points.push_back({lam, Source::ToeplitzSample, alpha_c / period, beta_c / period});
            }
        }
    }
    return out;
}

}  // namespace skinband
