#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace windkit {

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double v);

/// Strict full-string parse; nullopt on anything else (including inf/nan).
std::optional<double> parse_double(std::string_view s);

} // namespace windkit
