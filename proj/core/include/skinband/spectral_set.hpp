#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "skinband/linalg.hpp"

namespace skinband {

/// Where a spectral point came from.
enum class Source { FiniteOBC, FinitePBC, OBCLimit, PBCLimit, LaurentSample, ToeplitzSample, PseudoGrid };

std::string_view to_string(Source s) noexcept;
std::optional<Source> source_from_string(std::string_view name) noexcept;

/// One tagged point. param1/param2 carry m (and block index j), (alpha, beta)
/// or epsilon depending on the source.
struct SpectralPoint {
    cplx value;
    Source source = Source::FiniteOBC;
    double param1 = 0.0;
    double param2 = 0.0;
};

struct SpectralSet {
    std::vector<SpectralPoint> points;
    /// For sampled continua: half the largest jump between adjacent samples,
    /// i.e. how far the true curve may stray from the sample. Zero for
    /// finite spectra.
    double sampling_bound = 0.0;

    std::size_t size() const noexcept { return points.size(); }
    bool empty() const noexcept { return points.empty(); }
    std::vector<cplx> values() const;
    void append(const SpectralSet& other);
};

/// Bottleneck distance between equally sized multisets: the least t for
/// which a perfect matching pairs every point with a partner within t.
double matching_distance(std::span<const cplx> lhs, std::span<const cplx> rhs);

}  // namespace skinband
