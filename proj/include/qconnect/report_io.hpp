#pragma once

// JSON and CSV serialization of identity reports.

#include "qconnect/verify.hpp"

#include <iosfwd>
#include <string>

namespace qconnect {

std::string to_json(const IdentityReport& report);
std::string to_json(const std::vector<IdentityReport>& reports);

/// Parses a report written by to_json. Throws InvalidArgument on malformed input.
IdentityReport report_from_json(const std::string& text);

/// Header line plus one row per point record.
std::string to_csv(const IdentityReport& report);

}  // namespace qconnect
