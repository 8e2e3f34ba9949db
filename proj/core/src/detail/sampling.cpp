#include "detail/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace skinband::detail {

SpectralSet sample_alpha_slice(const SymbolCoefficients& s, std::size_t n_alpha, double beta, Source source) {
    const std::size_t k = s.k();
    const double period = s.spatial_period();
    SpectralSet out;
    out.points.reserve(n_alpha * k);
    std::vector<std::vector<cplx>> slices(n_alpha);
    for (std::size_t j = 0; j < n_alpha; ++j) {
        const double alpha = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(j) /
                                                     static_cast<double>(n_alpha);
        const cplx z = std::exp(cplx{beta, -alpha});
        slices[j] = eigenvalues(evaluate(s, z));
        for (const cplx& lam : slices[j]) {
            out.points.push_back({lam, source, alpha / period, beta / period});
        }
    }
    double gap = 0.0;
    for (std::size_t j = 0; j < n_alpha; ++j) {
        gap = std::max(gap, matching_distance(slices[j], slices[(j + 1) % n_alpha]));
    }
    out.sampling_bound = 0.5 * gap;
    return out;
}

}  // namespace skinband::detail
