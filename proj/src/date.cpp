#include "windkit/date.hpp"

#include <charconv>
#include <cstdio>

namespace windkit {

namespace {

bool parse_int(std::string_view s, int& out)
{
    if (s.empty())
        return false;
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

} // namespace

std::optional<Day> parse_date(std::string_view iso)
{
    // YYYY-MM-DD, fixed widths
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-')
        return std::nullopt;
    int y = 0, m = 0, d = 0;
    if (!parse_int(iso.substr(0, 4), y) || !parse_int(iso.substr(5, 2), m) ||
        !parse_int(iso.substr(8, 2), d))
        return std::nullopt;
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                          std::chrono::day{unsigned(d)}};
    if (!ymd.ok())
        return std::nullopt;
    return Day{ymd};
}

std::string format_date(Day d)
{
    const std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

} // namespace windkit
