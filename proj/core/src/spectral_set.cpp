#include "skinband/spectral_set.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "skinband/error.hpp"

namespace skinband {

namespace {

constexpr std::array<std::pair<Source, std::string_view>, 7> kSourceNames{{
    {Source::FiniteOBC, "FiniteOBC"},
    {Source::FinitePBC, "FinitePBC"},
    {Source::OBCLimit, "OBCLimit"},
    {Source::PBCLimit, "PBCLimit"},
    {Source::LaurentSample, "LaurentSample"},
    {Source::ToeplitzSample, "ToeplitzSample"},
    {Source::PseudoGrid, "PseudoGrid"},
}};

// Kuhn's augmenting-path matching restricted to edges with dist <= t.
class ThresholdMatcher {
public:
    ThresholdMatcher(const std::vector<double>& dist, std::size_t n) : dist_(dist), n_(n) {}

    bool perfect(double t) {
        t_ = t;
        match_.assign(n_, npos);
        for (std::size_t u = 0; u < n_; ++u) {
            seen_.assign(n_, false);
            if (!augment(u)) return false;
        }
        return true;
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    bool augment(std::size_t u) {
        for (std::size_t v = 0; v < n_; ++v) {
            if (seen_[v] || dist_[u * n_ + v] > t_) continue;
            seen_[v] = true;
            if (match_[v] == npos || augment(match_[v])) {
                match_[v] = u;
                return true;
            }
        }
        return false;
    }

    const std::vector<double>& dist_;
    std::size_t n_;
    double t_ = 0.0;
    std::vector<std::size_t> match_;
    std::vector<bool> seen_;
};

}  // namespace

std::string_view to_string(Source s) noexcept {
    for (const auto& [src, name] : kSourceNames) {
        if (src == s) return name;
    }
    return "Unknown";
}

std::optional<Source> source_from_string(std::string_view name) noexcept {
    for (const auto& [src, n] : kSourceNames) {
        if (n == name) return src;
    }
    return std::nullopt;
}

std::vector<cplx> SpectralSet::values() const {
    std::vector<cplx> v;
    v.reserve(points.size());
    for (const auto& p : points) v.push_back(p.value);
    return v;
}

void SpectralSet::append(const SpectralSet& other) {
    points.insert(points.end(), other.points.begin(), other.points.end());
    sampling_bound = std::max(sampling_bound, other.sampling_bound);
}

double matching_distance(std::span<const cplx> lhs, std::span<const cplx> rhs) {
    if (lhs.size() != rhs.size()) {
        throw SpectralError(ErrorKind::InvalidInput, "matching_distance: multisets differ in size (" +
                                                         std::to_string(lhs.size()) + " vs " +
                                                         std::to_string(rhs.size()) + ")");
    }
    const std::size_t n = lhs.size();
    if (n == 0) return 0.0;
    std::vector<double> dist(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) dist[i * n + j] = std::abs(lhs[i] - rhs[j]);
    }
    std::vector<double> cand = dist;
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    ThresholdMatcher matcher(dist, n);
    // the answer is the smallest candidate admitting a perfect matching;
    // it is at least the largest row/column minimum
    double lower = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double rmin = dist[i * n];
        double cmin = dist[i];
        for (std::size_t j = 1; j < n; ++j) {
            rmin = std::min(rmin, dist[i * n + j]);
            cmin = std::min(cmin, dist[j * n + i]);
        }
        lower = std::max({lower, rmin, cmin});
    }
    std::size_t lo = static_cast<std::size_t>(std::lower_bound(cand.begin(), cand.end(), lower) - cand.begin());
    std::size_t hi = cand.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (matcher.perfect(cand[mid])) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return cand[lo];
}

}  // namespace skinband
