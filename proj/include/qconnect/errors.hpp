#pragma once

#include <stdexcept>
#include <string>

namespace qconnect {

/// Failure categories raised by the library.
enum class Errc {
    InvalidArgument,
    TruncationExceeded,
    SpiralProximity,
    ZeroArgument,
    DivergentSeries,
    OutsideRadius,
    BadLowerParameter,
    PoleHit,
    NoConvergence,
    PoleOnContour,
    BaseMismatch,
    ThetaZero,
    EmptyGrid,
};

const char* to_string(Errc code) noexcept;

/// True for errors caused by an argument lying in an excluded set
/// (spirals, poles, theta zeros, radius of convergence).
bool is_domain_error(Errc code) noexcept;

class QError : public std::runtime_error {
public:
    QError(Errc code, const std::string& what);

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace qconnect
