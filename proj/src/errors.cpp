#include "qconnect/errors.hpp"

namespace qconnect {

const char* to_string(Errc code) noexcept
{
    switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::TruncationExceeded: return "TruncationExceeded";
    case Errc::SpiralProximity: return "SpiralProximity";
    case Errc::ZeroArgument: return "ZeroArgument";
    case Errc::DivergentSeries: return "DivergentSeries";
    case Errc::OutsideRadius: return "OutsideRadius";
    case Errc::BadLowerParameter: return "BadLowerParameter";
    case Errc::PoleHit: return "PoleHit";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::PoleOnContour: return "PoleOnContour";
    case Errc::BaseMismatch: return "BaseMismatch";
    case Errc::ThetaZero: return "ThetaZero";
    case Errc::EmptyGrid: return "EmptyGrid";
    }
    return "Unknown";
}

bool is_domain_error(Errc code) noexcept
{
    switch (code) {
    case Errc::SpiralProximity:
    case Errc::ZeroArgument:
    case Errc::DivergentSeries:
    case Errc::OutsideRadius:
    case Errc::BadLowerParameter:
    case Errc::PoleHit:
    case Errc::PoleOnContour:
    case Errc::ThetaZero:
    case Errc::EmptyGrid:
        return true;
    default:
        return false;
    }
}

QError::QError(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{
}

}  // namespace qconnect
