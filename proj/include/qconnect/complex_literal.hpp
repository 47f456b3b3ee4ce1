#pragma once

#include "qconnect/qmodulus.hpp"

#include <optional>
#include <string_view>

namespace qconnect {

inline constexpr std::string_view kComplexGrammar =
    "complex literal: <real> | <real>+<imag>i | <real>-<imag>i, no spaces (e.g. 0.5, 1-2i, -3e-2+4i)";

/// Parses "a", "a+bi" or "a-bi". Returns nullopt on any malformed input.
std::optional<Complex> parse_complex(std::string_view text);

}  // namespace qconnect
