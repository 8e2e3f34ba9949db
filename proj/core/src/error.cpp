#include "skinband/error.hpp"

namespace skinband {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::ReciprocalDegenerate: return "reciprocal-degenerate";
        case ErrorKind::CornerCollision: return "corner-collision";
        case ErrorKind::OverflowGuard: return "overflow-guard";
        case ErrorKind::OnBoundary: return "on-boundary";
        case ErrorKind::ConfluentMode: return "confluent-mode";
        case ErrorKind::NonConvergence: return "non-convergence";
        case ErrorKind::Inconsistency: return "inconsistency";
    }
    return "unknown";
}

SpectralError::SpectralError(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace skinband
