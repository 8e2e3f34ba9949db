#include "skinband/symbol.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "skinband/error.hpp"

namespace skinband {

namespace {

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

void require_nonzero(cplx z, const char* op) {
    if (z == cplx{}) {
        throw SpectralError(ErrorKind::InvalidInput, std::string(op) + ": z must be nonzero");
    }
}

double sign_k(std::size_t k) { return (k % 2 == 1) ? 1.0 : -1.0; }  // (-1)^{k+1}

}  // namespace

SymbolCoefficients::SymbolCoefficients(std::vector<cplx> diag, std::vector<cplx> upper, std::vector<cplx> lower,
                                       double spatial_period)
    : diag_(std::move(diag)), upper_(std::move(upper)), lower_(std::move(lower)), period_(spatial_period) {
    if (diag_.empty()) {
        throw SpectralError(ErrorKind::InvalidInput, "symbol: k must be at least 1");
    }
    if (upper_.size() != diag_.size() || lower_.size() != diag_.size()) {
        throw SpectralError(ErrorKind::InvalidInput,
                            "symbol: diag, upper and lower must all have length k = " + std::to_string(diag_.size()));
    }
    if (!(std::isfinite(period_) && period_ > 0.0)) {
        throw SpectralError(ErrorKind::InvalidInput, "symbol: spatial period must be positive and finite");
    }
    degenerate_ = false;
    for (std::size_t i = 0; i < diag_.size(); ++i) {
        if (!finite(diag_[i]) || !finite(upper_[i]) || !finite(lower_[i])) {
            throw SpectralError(ErrorKind::InvalidInput, "symbol: coefficient " + std::to_string(i + 1) + " is not finite");
        }
        if (upper_[i] == cplx{} || lower_[i] == cplx{}) degenerate_ = true;
    }
}

void SymbolCoefficients::require_nondegenerate(std::string_view op) const {
    if (degenerate_) {
        throw SpectralError(ErrorKind::ReciprocalDegenerate,
                            std::string(op) + ": all off-diagonal coefficients b_i, c_i must be nonzero");
    }
}

cplx SymbolCoefficients::upper_product() const noexcept {
    cplx p{1.0, 0.0};
    for (const cplx& b : upper_) p *= b;
    return p;
}

cplx SymbolCoefficients::lower_product() const noexcept {
    cplx p{1.0, 0.0};
    for (const cplx& c : lower_) p *= c;
    return p;
}

double EllipseGeometry::real_semi_axis(double beta) const noexcept {
    return a_plus * std::exp(-beta) + a_minus * std::exp(beta);
}

double EllipseGeometry::imag_semi_axis(double beta) const noexcept {
    return a_plus * std::exp(-beta) - a_minus * std::exp(beta);
}

double EllipseGeometry::boundary_tolerance(double beta) const noexcept {
    return 1e-9 * (std::abs(real_semi_axis(beta)) + std::abs(imag_semi_axis(beta)));
}

bool EllipseGeometry::collapsed() const noexcept { return std::abs(delta) <= 1e-12; }

std::string_view to_string(Membership m) noexcept {
    switch (m) {
        case Membership::Interior: return "interior";
        case Membership::Boundary: return "boundary";
        case Membership::Exterior: return "exterior";
    }
    return "unknown";
}

cplx Quasiperiodicity::associated_point(double spatial_period) const noexcept {
    return std::exp(cplx{0.0, -spatial_period} * cplx{alpha, beta});
}

DenseComplexMatrix evaluate(const SymbolCoefficients& s, cplx z) {
    require_nonzero(z, "evaluate");
    const std::size_t k = s.k();
    const auto a = s.diag();
    const auto b = s.upper();
    const auto c = s.lower();
    DenseComplexMatrix m(k);
    if (k == 1) {
        m(0, 0) = a[0] + c[0] * z + b[0] / z;
        return m;
    }
    for (std::size_t i = 0; i < k; ++i) m(i, i) = a[i];
    for (std::size_t i = 0; i + 1 < k; ++i) {
        m(i, i + 1) = b[i];
        m(i + 1, i) = c[i];
    }
    // for k = 2 the corners land on the band entries and add to them
    m(0, k - 1) += c[k - 1] * z;
    m(k - 1, 0) += b[k - 1] / z;
    return m;
}

cplx psi(const SymbolCoefficients& s, cplx z) {
    require_nonzero(z, "psi");
    return sign_k(s.k()) * (s.lower_product() * z + s.upper_product() / z);
}

cplx g_polynomial(const SymbolCoefficients& s, cplx lambda) {
    const cplx z0{1.0, 0.0};
    return determinant(evaluate(s, z0).shifted(lambda)) - psi(s, z0);
}

EllipseGeometry ellipse_geometry(const SymbolCoefficients& s) {
    s.require_nondegenerate("ellipse_geometry");
    EllipseGeometry e;
    e.a_plus = 1.0;
    e.a_minus = 1.0;
    cplx rot{sign_k(s.k()), 0.0};
    cplx ratio{1.0, 0.0};
    double log_ratio = 0.0;
    for (std::size_t j = 0; j < s.k(); ++j) {
        const cplx b = s.upper()[j];
        const cplx c = s.lower()[j];
        e.a_plus *= std::abs(b);
        e.a_minus *= std::abs(c);
        const cplx bc = b * c;
        rot *= std::sqrt(bc / std::abs(bc));
        // accumulate the phase as a unit complex number to avoid overflow
        const cplx q = b / c;
        ratio *= q / std::abs(q);
        log_ratio += std::log(std::abs(b)) - std::log(std::abs(c));
    }
    e.rotation = rot;
    e.zeta = wrap_angle(std::arg(ratio));
    e.delta = log_ratio;
    return e;
}

bool is_collapsed(const SymbolCoefficients& s) { return ellipse_geometry(s).collapsed(); }

Membership ellipse_membership(const EllipseGeometry& e, cplx xi, double beta) {
    const cplx w = xi / e.rotation;
    const double ax = std::abs(e.real_semi_axis(beta));
    const double ay = std::abs(e.imag_semi_axis(beta));
    const double tol = e.boundary_tolerance(beta);

    if (ay <= tol) {
        // segment [-ax, ax] on the real axis of w
        if (std::abs(w.imag()) <= tol && std::abs(w.real()) <= ax + tol) return Membership::Boundary;
        return Membership::Exterior;
    }
    const double r = std::hypot(w.real() / ax, w.imag() / ay);
    if (r == 0.0) return Membership::Interior;
    // distance from w to the boundary point on the same ray through the centre
    const double radial = std::abs(r - 1.0) * std::abs(w) / r;
    if (radial <= tol) return Membership::Boundary;
    return r < 1.0 ? Membership::Interior : Membership::Exterior;
}

double wrap_angle(double theta) noexcept {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double t = std::fmod(theta + std::numbers::pi, two_pi);
    if (t < 0.0) t += two_pi;
    t -= std::numbers::pi;
    if (t >= std::numbers::pi) t -= two_pi;
    return t;
}

}  // namespace skinband
