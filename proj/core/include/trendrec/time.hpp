#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace trendrec {

// All timestamps in the engine are UTC with second precision.
using UtcTime = std::chrono::sys_seconds;

// Parses an RFC 3339 datetime ("2022-03-01T10:00:00Z", lowercase t/z and
// numeric offsets accepted, fractional seconds truncated) into UTC.
// Throws ValidationError on malformed input.
UtcTime parse_rfc3339_utc(std::string_view text);

// Formats as "YYYY-MM-DDThh:mm:ssZ".
std::string format_rfc3339_utc(UtcTime t);

}  // namespace trendrec
