#pragma once

// Locale-independent number formatting and small string helpers.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace acsq::text {

/// Parses the whole string as a double; nullopt on any trailing garbage.
std::optional<double> parse_double(std::string_view s);
std::optional<long> parse_long(std::string_view s);

/// Shortest representation that round-trips exactly.
std::string format_double(double v);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

}  // namespace acsq::text
