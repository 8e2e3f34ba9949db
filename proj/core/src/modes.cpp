#include "skinband/modes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "skinband/error.hpp"
#include "skinband/lattice.hpp"
#include "skinband/limits.hpp"

namespace skinband {

namespace {

double max_abs(std::span<const cplx> v) {
    double m = 0.0;
    for (const cplx& x : v) m = std::max(m, std::abs(x));
    return m;
}

double norm2(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx& x : v) s += std::norm(x);
    return std::sqrt(s);
}

// Defect of row 1 of (T(a) + shift e_1 e_1^T - lambda) on the extension of
// v at z. Every other row holds exactly; row 1 misses the c_k z v_k term
// that a(z) would have wrapped in from the cell to the left.
cplx first_row_defect(const SymbolCoefficients& s, std::span<const cplx> v, cplx z, cplx shift) {
    const std::size_t k = s.k();
    return shift * v[0] - s.lower()[k - 1] * z * v[k - 1];
}

}  // namespace

QuasiperiodicMode quasiperiodic_extension(std::span<const cplx> base, cplx z, std::size_t m) {
    if (z == cplx{}) {
        throw SpectralError(ErrorKind::InvalidInput, "quasiperiodic_extension: z must be nonzero");
    }
    if (m < 1 || base.empty()) {
        throw SpectralError(ErrorKind::InvalidInput, "quasiperiodic_extension: need m >= 1 and a nonempty base");
    }
    QuasiperiodicMode mode{std::vector<cplx>(base.begin(), base.end()), z, m, {}};
    mode.samples.reserve(m * base.size());
    const cplx step = 1.0 / z;
    for (std::size_t j = 0; j < m; ++j) {
        // explicit power keeps each block exact to rounding rather than
        // accumulating a product error along the chain
        const cplx factor = std::pow(step, static_cast<double>(j));
        for (const cplx& b : base) mode.samples.push_back(factor * b);
    }
    return mode;
}

SymbolicEigenvector symbolic_eigenvector(const SymbolCoefficients& s, cplx lambda, std::size_t m_render,
                                         cplx top_left_shift) {
    if (m_render < 2) {
        throw SpectralError(ErrorKind::InvalidInput, "symbolic_eigenvector: m_render must be at least 2");
    }
    SymbolicEigenvector out;
    out.quasiperiodicities = locate_quasiperiodicities(s, lambda);
    const cplx z1 = out.quasiperiodicities.z_first;
    const cplx z2 = out.quasiperiodicities.z_second;
    // a double root splits by about sqrt(eps) |z| under rounding
    if (std::abs(z1 - z2) <= 1e-6 * std::max(std::abs(z1), std::abs(z2))) {
        std::ostringstream msg;
        msg << "symbolic_eigenvector: quasiperiodicities coincide at z = " << z1 << " (lambda = " << lambda << ")";
        throw SpectralError(ErrorKind::ConfluentMode, msg.str());
    }

    const std::vector<cplx> v1 = inverse_iteration(evaluate(s, z1), lambda);
    const std::vector<cplx> v2 = inverse_iteration(evaluate(s, z2), lambda);
    out.first = quasiperiodic_extension(v1, z1, m_render);
    out.second = quasiperiodic_extension(v2, z2, m_render);

    const cplx f1 = first_row_defect(s, v1, z1, top_left_shift);
    const cplx f2 = first_row_defect(s, v2, z2, top_left_shift);
    const double scale = evaluate(s, 1.0).frobenius_norm() + std::abs(lambda);
    if (std::max(std::abs(f1), std::abs(f2)) <= 1e-14 * scale) {
        // both extensions already satisfy the first row
        out.gamma_first = 1.0;
        out.gamma_second = 0.0;
    } else {
        out.gamma_first = f2;
        out.gamma_second = -f1;
    }

    const std::size_t n = out.first.samples.size();
    out.rendered.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.rendered[i] = out.gamma_first * out.first.samples[i] + out.gamma_second * out.second.samples[i];
    }

    DenseComplexMatrix t = toeplitz_matrix(s, m_render).matrix;
    t(0, 0) += top_left_shift;
    std::vector<cplx> r = t.apply(out.rendered);
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) worst = std::max(worst, std::abs(r[i] - lambda * out.rendered[i]));
    const double umax = max_abs(out.rendered);
    out.residual = umax > 0.0 ? worst / (scale * umax) : std::numeric_limits<double>::infinity();
    return out;
}

DecayFit decay_rate(std::span<const cplx> u, std::size_t k) {
    if (k == 0 || u.size() % k != 0) {
        throw SpectralError(ErrorKind::InvalidInput, "decay_rate: length must be a multiple of k");
    }
    const std::size_t m = u.size() / k;
    if (m < 4) {
        throw SpectralError(ErrorKind::InvalidInput, "decay_rate: need at least 4 cells");
    }
    DecayFit fit;
    fit.window_begin = m / 4;
    fit.window_end = m - m / 4;

    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t j = fit.window_begin; j < fit.window_end; ++j) {
        const double peak = max_abs(u.subspan(j * k, k));
        if (peak == 0.0) {
            throw SpectralError(ErrorKind::InvalidInput,
                                "decay_rate: cell " + std::to_string(j) + " in the fitting window is zero");
        }
        xs.push_back(static_cast<double>(j));
        ys.push_back(std::log(peak));
    }
    const double count = static_cast<double>(xs.size());
    double xbar = 0.0;
    double ybar = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xbar += xs[i];
        ybar += ys[i];
    }
    xbar /= count;
    ybar /= count;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - xbar) * (xs[i] - xbar);
        sxy += (xs[i] - xbar) * (ys[i] - ybar);
    }
    const double slope = sxy / sxx;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (ybar + slope * (xs[i] - xbar));
        ss += e * e;
    }
    fit.beta = -slope;
    fit.residual = std::sqrt(ss / count);
    return fit;
}

DimensionCheck eigenspace_dimension_check(const DenseComplexMatrix& m, cplx lambda) {
    const std::size_t n = m.order();
    if (n < 2) {
        throw SpectralError(ErrorKind::InvalidInput, "eigenspace_dimension_check: need order >= 2");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t gap = i > j ? i - j : j - i;
            if (gap > 1 && m(i, j) != cplx{}) {
                throw SpectralError(ErrorKind::InvalidInput, "eigenspace_dimension_check: matrix is not tridiagonal");
            }
            if (gap == 1 && m(i, j) == cplx{}) {
                std::ostringstream msg;
                msg << "eigenspace_dimension_check: zero off-diagonal at (" << i + 1 << ", " << j + 1 << ")";
                throw SpectralError(ErrorKind::InvalidInput, msg.str());
            }
        }
    }
    const EigenResult eig = eig_dense(m, true);
    std::size_t nearest = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(eig.eigenvalues[i] - lambda) < std::abs(eig.eigenvalues[nearest] - lambda)) nearest = i;
    }
    if (std::abs(eig.eigenvalues[nearest] - lambda) > 1e-8 * std::max(1.0, m.frobenius_norm())) {
        std::ostringstream msg;
        msg << "eigenspace_dimension_check: lambda = " << lambda << " is not an eigenvalue";
        throw SpectralError(ErrorKind::InvalidInput, msg.str());
    }

    // row i: m(i,i-1) u_{i-1} + (m(i,i) - lambda) u_i + m(i,i+1) u_{i+1} = 0
    std::vector<cplx> u(n);
    u[0] = 1.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        cplx acc = (m(i, i) - lambda) * u[i];
        if (i > 0) acc += m(i, i - 1) * u[i - 1];
        u[i + 1] = -acc / m(i, i + 1);
        const double big = std::abs(u[i + 1]);
        if (big > 1e100) {
            for (std::size_t j = 0; j <= i + 1; ++j) u[j] /= big;
        }
    }

    cplx inner{};
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = (*eig.eigenvectors)(i, nearest);
        inner += std::conj(u[i]) * v[i];
    }
    DimensionCheck check;
    check.collinearity = std::abs(inner) / (norm2(u) * norm2(v));
    check.verified = check.collinearity > 1.0 - 1e-8;
    return check;
}

std::vector<FiniteMode> obc_eigenmodes(const SymbolCoefficients& s, std::size_t m) {
    const SpectralSet spectrum = finite_obc_spectrum(s, m);
    std::vector<cplx> values = spectrum.values();
    std::sort(values.begin(), values.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    const DenseComplexMatrix t = toeplitz_matrix(s, m).matrix;
    std::vector<FiniteMode> modes;
    modes.reserve(values.size());
    for (const cplx& lam : values) modes.push_back({lam, inverse_iteration(t, lam)});
    return modes;
}

}  // namespace skinband
