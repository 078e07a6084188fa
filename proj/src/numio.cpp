#include "windkit/numio.hpp"

#include <charconv>
#include <cmath>

namespace windkit {

std::string format_double(double v)
{
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::optional<double> parse_double(std::string_view s)
{
    if (s.empty())
        return std::nullopt;
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        return std::nullopt;
    if (!std::isfinite(v))
        return std::nullopt;
    return v;
}

} // namespace windkit
