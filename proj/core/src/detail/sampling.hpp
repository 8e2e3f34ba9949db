#pragma once

#include <cstddef>

#include "skinband/spectral_set.hpp"
#include "skinband/symbol.hpp"

namespace skinband::detail {

/// sigma(a(e^{-i(alpha + i beta)})) for alpha on the uniform grid
/// -pi + 2 pi j / n_alpha, in grid order (k points per alpha). Tags carry
/// (alpha / L, beta / L); sampling_bound is half the largest matching
/// distance between neighbouring alphas, wrapping around.
SpectralSet sample_alpha_slice(const SymbolCoefficients& s, std::size_t n_alpha, double beta, Source source);

}  // namespace skinband::detail
