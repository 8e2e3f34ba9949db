#include "skinband/limits.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "detail/sampling.hpp"
#include "skinband/error.hpp"
#include "skinband/lattice.hpp"

namespace skinband {

namespace {

void require_alpha_grid(std::size_t n_alpha, const char* op) {
    if (n_alpha < 16) {
        throw SpectralError(ErrorKind::InvalidInput, std::string(op) + ": n_alpha must be at least 16");
    }
}

SpectralSet tag_all(const std::vector<cplx>& values, Source source, double p1, double p2) {
    SpectralSet out;
    out.points.reserve(values.size());
    for (const cplx& v : values) out.points.push_back({v, source, p1, p2});
    return out;
}

}  // namespace

SpectralSet obc_limit_set(const SymbolCoefficients& s, std::size_t n_alpha) {
    require_alpha_grid(n_alpha, "obc_limit_set");
    const EllipseGeometry e = ellipse_geometry(s);
    return detail::sample_alpha_slice(s, n_alpha, 0.5 * e.delta, Source::OBCLimit);
}

double obc_similarity_phase(const SymbolCoefficients& s) {
    cplx product{1.0, 0.0};
    for (const cplx& r : symmetrizer_ratios(s)) product *= r;
    return std::arg(product);
}

SpectralSet pbc_spectrum(const SymbolCoefficients& s, std::size_t m) {
    if (m < 2) {
        throw SpectralError(ErrorKind::CornerCollision, "pbc_spectrum: need m >= 2");
    }
    SpectralSet out;
    out.points.reserve(m * s.k());
    for (std::size_t j = 0; j < m; ++j) {
        const cplx omega = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m));
        for (const cplx& lam : eigenvalues(evaluate(s, omega))) {
            out.points.push_back({lam, Source::PBCLimit, static_cast<double>(m), static_cast<double>(j)});
        }
    }
    return out;
}

SpectralSet finite_pbc_spectrum(const SymbolCoefficients& s, std::size_t m) {
    const FiniteLattice lat = circulant_matrix(s, m);
    return tag_all(eigenvalues(lat.matrix), Source::FinitePBC, static_cast<double>(m), 0.0);
}

SpectralSet laurent_spectrum_sample(const SymbolCoefficients& s, std::size_t n_alpha) {
    require_alpha_grid(n_alpha, "laurent_spectrum_sample");
    return detail::sample_alpha_slice(s, n_alpha, 0.0, Source::LaurentSample);
}

SpectralSet finite_obc_spectrum(const SymbolCoefficients& s, std::size_t m, std::optional<bool> via_collapse) {
    const bool collapse = via_collapse.value_or(!s.reciprocal_degenerate() && m * s.k() > 20);
    const SymbolCoefficients source = collapse ? collapsed_symbol(s) : s;
    const FiniteLattice lat = toeplitz_matrix(source, m);
    return tag_all(eigenvalues(lat.matrix), Source::FiniteOBC, static_cast<double>(m), collapse ? 1.0 : 0.0);
}

double PseudospectrumGrid::x(std::size_t ix) const noexcept {
    return rectangle.re_min + (rectangle.re_max - rectangle.re_min) * static_cast<double>(ix) /
                                  static_cast<double>(nx - 1);
}

double PseudospectrumGrid::y(std::size_t iy) const noexcept {
    return rectangle.im_min + (rectangle.im_max - rectangle.im_min) * static_cast<double>(iy) /
                                  static_cast<double>(ny - 1);
}

PseudospectrumGrid pseudospectrum_grid(const SymbolCoefficients& s, std::size_t m, const Rectangle& rect,
                                       std::size_t nx, std::size_t ny, unsigned threads) {
    if (nx < 16 || ny < 16) {
        throw SpectralError(ErrorKind::InvalidInput, "pseudospectrum_grid: resolution must be at least 16x16");
    }
    if (!(rect.re_max > rect.re_min) || !(rect.im_max > rect.im_min)) {
        throw SpectralError(ErrorKind::InvalidInput, "pseudospectrum_grid: rectangle is degenerate");
    }
    PseudospectrumGrid grid{rect, nx, ny, m, std::vector<double>(nx * ny, 0.0)};
    const DenseComplexMatrix t = toeplitz_matrix(s, m).matrix;

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, ny));

    std::mutex failure_lock;
    std::exception_ptr failure;
    auto work = [&](unsigned worker) {
        for (std::size_t iy = worker; iy < ny; iy += threads) {
            for (std::size_t ix = 0; ix < nx; ++ix) {
                try {
                    grid.values[iy * nx + ix] = smallest_singular_value(t.shifted({grid.x(ix), grid.y(iy)}));
                } catch (const SpectralError& err) {
                    std::ostringstream msg;
                    msg << "pseudospectrum_grid at (" << grid.x(ix) << ", " << grid.y(iy) << "): " << err.what();
                    std::lock_guard lock(failure_lock);
                    if (!failure) failure = std::make_exception_ptr(SpectralError(err.kind(), msg.str()));
                    return;
                }
            }
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    }
    if (failure) std::rethrow_exception(failure);
    return grid;
}

double directed_hausdorff(std::span<const cplx> from, std::span<const cplx> to) {
    if (from.empty() || to.empty()) {
        throw SpectralError(ErrorKind::InvalidInput, "hausdorff_distance: sets must be nonempty");
    }
    // sweep over `to` sorted by real part; stop once the real gap alone
    // exceeds the best distance found
    std::vector<cplx> sorted(to.begin(), to.end());
    std::sort(sorted.begin(), sorted.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    double worst = 0.0;
    for (const cplx& p : from) {
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), p.real(),
                                         [](cplx a, double re) { return a.real() < re; });
        double best = std::numeric_limits<double>::infinity();
        for (auto up = it; up != sorted.end() && up->real() - p.real() < best; ++up) {
            best = std::min(best, std::abs(*up - p));
        }
        for (auto down = it; down != sorted.begin();) {
            --down;
            if (p.real() - down->real() >= best) break;
            best = std::min(best, std::abs(*down - p));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

HausdorffResult hausdorff_distance(std::span<const cplx> lhs, std::span<const cplx> rhs) {
    HausdorffResult r;
    r.forward = directed_hausdorff(lhs, rhs);
    r.backward = directed_hausdorff(rhs, lhs);
    r.distance = std::max(r.forward, r.backward);
    return r;
}

HausdorffResult hausdorff_distance(const SpectralSet& lhs, const SpectralSet& rhs) {
    const auto a = lhs.values();
    const auto b = rhs.values();
    return hausdorff_distance(a, b);
}

std::vector<ConvergenceRow> convergence_study(const SymbolCoefficients& s, std::span<const std::size_t> m_list,
                                              ConvergenceTargets targets, std::size_t n_alpha) {
    for (std::size_t i = 0; i < m_list.size(); ++i) {
        if (m_list[i] == 0 || (i > 0 && m_list[i] <= m_list[i - 1])) {
            throw SpectralError(ErrorKind::InvalidInput, "convergence_study: m_list must be positive and increasing");
        }
    }
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    std::optional<SpectralSet> obc_limit;
    if (targets.obc) obc_limit = obc_limit_set(s, n_alpha);
    const std::vector<cplx> obc_values = obc_limit ? obc_limit->values() : std::vector<cplx>{};

    std::vector<ConvergenceRow> rows;
    rows.reserve(m_list.size());
    for (const std::size_t m : m_list) {
        ConvergenceRow row{m, nan, nan, nan};
        if (targets.obc) {
            const auto finite = finite_obc_spectrum(s, m, true).values();
            row.d_obc_directed = directed_hausdorff(finite, obc_values);
            row.d_obc_sampling_bound = obc_limit->sampling_bound;
        }
        if (targets.pbc && m >= 2) {
            const auto dense = finite_pbc_spectrum(s, m).values();
            const auto blocks = pbc_spectrum(s, m).values();
            row.d_pbc = directed_hausdorff(dense, blocks);
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace skinband
