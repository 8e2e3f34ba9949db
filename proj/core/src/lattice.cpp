#include "skinband/lattice.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "skinband/error.hpp"

namespace skinband {

namespace {

constexpr double kOverflowLog = 600.0;

void require_cells(std::size_t m, const char* op) {
    if (m == 0) throw SpectralError(ErrorKind::InvalidInput, std::string(op) + ": m must be at least 1");
}

}  // namespace

FiniteLattice toeplitz_matrix(const SymbolCoefficients& s, std::size_t m) {
    require_cells(m, "toeplitz_matrix");
    const std::size_t k = s.k();
    const std::size_t n = m * k;
    FiniteLattice lat{m, DenseComplexMatrix(n), Boundary::Open};
    for (std::size_t i = 0; i < n; ++i) {
        lat.matrix(i, i) = s.diag()[i % k];
        if (i + 1 < n) {
            lat.matrix(i, i + 1) = s.upper()[i % k];
            lat.matrix(i + 1, i) = s.lower()[i % k];
        }
    }
    return lat;
}

FiniteLattice circulant_matrix(const SymbolCoefficients& s, std::size_t m) {
    if (m < 2) {
        throw SpectralError(ErrorKind::CornerCollision,
                            "circulant_matrix: m = 1 would place the corners on the band; need m >= 2");
    }
    FiniteLattice lat = toeplitz_matrix(s, m);
    const std::size_t n = lat.matrix.order();
    const std::size_t k = s.k();
    // for k = 1, m = 2 the corners fall on the band and add to it
    lat.matrix(0, n - 1) += s.lower()[k - 1];
    lat.matrix(n - 1, 0) += s.upper()[k - 1];
    lat.kind = Boundary::Periodic;
    return lat;
}

std::vector<cplx> symmetrizer_ratios(const SymbolCoefficients& s) {
    s.require_nondegenerate("symmetrizer");
    std::vector<cplx> r(s.k());
    for (std::size_t i = 0; i < s.k(); ++i) {
        // a negative ratio can come out of the division with imag -0, which
        // would flip the principal branch to -i
        const cplx q = s.upper()[i] / s.lower()[i];
        r[i] = std::sqrt(cplx{q.real(), q.imag() + 0.0});
    }
    return r;
}

SymbolCoefficients collapsed_symbol(const SymbolCoefficients& s) {
    s.require_nondegenerate("collapsed_symbol");
    const std::vector<cplx> r = symmetrizer_ratios(s);
    std::vector<cplx> off(s.k());
    for (std::size_t i = 0; i < s.k(); ++i) off[i] = s.upper()[i] / r[i];
    std::vector<cplx> diag(s.diag().begin(), s.diag().end());
    return SymbolCoefficients(std::move(diag), off, off, s.spatial_period());
}

std::vector<cplx> symmetrizer(const SymbolCoefficients& s, std::size_t m) {
    require_cells(m, "symmetrizer");
    const std::vector<cplx> r = symmetrizer_ratios(s);
    const std::size_t k = s.k();
    const std::size_t n = m * k;

    // The log-magnitude of D_ii peaks somewhere along the chain; scan the
    // partial sums before building anything.
    double log_mag = 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        log_mag += std::log(std::abs(r[i % k]));
        worst = std::max(worst, std::abs(log_mag));
    }
    if (worst > kOverflowLog) {
        std::ostringstream msg;
        msg << "symmetrizer: entries reach e^" << worst << " for m = " << m
            << "; assemble T_{mk} from collapsed_symbol instead";
        throw SpectralError(ErrorKind::OverflowGuard, msg.str());
    }

    std::vector<cplx> d(n);
    d[0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) d[i] = d[i - 1] * r[(i - 1) % k];
    return d;
}

}  // namespace skinband
