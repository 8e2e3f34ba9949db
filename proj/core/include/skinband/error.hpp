#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace skinband {

enum class ErrorKind {
    InvalidInput,          // violated precondition on caller-supplied data
    ReciprocalDegenerate,  // a zero off-diagonal where the operation needs b_i, c_i != 0
    CornerCollision,       // circulant assembly with a single unit cell
    OverflowGuard,         // symmetrizer entries would leave double range
    OnBoundary,            // spectral point within tolerance of the symbol curve
    ConfluentMode,         // coincident quasiperiodicities
    NonConvergence,        // iteration cap exceeded
    Inconsistency,         // two independent routes disagree beyond tolerance
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. The kind lets callers (and the CLI's
/// exit-code mapping) distinguish bad input from numerical trouble.
class SpectralError : public std::runtime_error {
public:
    SpectralError(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace skinband
