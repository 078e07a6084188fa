#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace windkit {

/// Calendar day; the toolkit works strictly at daily resolution.
using Day = std::chrono::sys_days;

/// Parses strict ISO-8601 "YYYY-MM-DD"; nullopt on malformed or invalid dates.
std::optional<Day> parse_date(std::string_view iso);

std::string format_date(Day d);

} // namespace windkit
