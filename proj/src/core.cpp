#include "windkit/core.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "windkit/errors.hpp"

namespace windkit {

bool valid_site_id(const SiteId& id)
{
    if (id.empty())
        return false;
    for (char c : id) {
        if (c == '/' || c == '\\' || std::isspace(static_cast<unsigned char>(c)))
            return false;
    }
    return true;
}

std::string_view to_string(WindVar v)
{
    switch (v) {
    case WindVar::Avg: return "avg";
    case WindVar::Gust: return "gust";
    default: return "dir";
    }
}

WindVar parse_wind_var(std::string_view s)
{
    if (s == "avg")
        return WindVar::Avg;
    if (s == "gust")
        return WindVar::Gust;
    if (s == "dir")
        return WindVar::Dir;
    throw DataError("unknown wind variable '" + std::string(s) + "' (expected avg, gust or dir)");
}

Dataset::Dataset(std::vector<WindSeries> series) : series_(std::move(series))
{
    if (series_.empty())
        throw DataError("dataset must contain at least one series");
    start_ = series_.front().start_date;
    const std::size_t n = series_.front().samples.size();
    if (n == 0)
        throw DataError("series '" + series_.front().site + "' is empty");
    std::unordered_set<std::string> seen;
    for (const WindSeries& s : series_) {
        if (!valid_site_id(s.site))
            throw DataError("invalid site id '" + s.site + "'");
        if (!seen.insert(s.site).second)
            throw DataError("duplicate site id '" + s.site + "'");
        if (s.samples.empty())
            throw DataError("series '" + s.site + "' is empty");
        if (s.start_date != start_ || s.samples.size() != n)
            throw DataError("series '" + s.site + "' is not aligned with '" +
                            series_.front().site + "' (start " + format_date(s.start_date) + ", " +
                            std::to_string(s.samples.size()) + " days vs start " +
                            format_date(start_) + ", " + std::to_string(n) + " days)");
    }
}

std::vector<SiteId> Dataset::site_ids() const
{
    std::vector<SiteId> out;
    out.reserve(series_.size());
    for (const WindSeries& s : series_)
        out.push_back(s.site);
    return out;
}

bool Dataset::has_site(const SiteId& site) const
{
    return std::any_of(series_.begin(), series_.end(),
                       [&](const WindSeries& s) { return s.site == site; });
}

const WindSeries& Dataset::series_for(const SiteId& site) const
{
    for (const WindSeries& s : series_) {
        if (s.site == site)
            return s;
    }
    throw DataError("unknown site '" + site + "'");
}

bool Dataset::complete() const
{
    for (const WindSeries& s : series_) {
        for (const WindSample& smp : s.samples) {
            if (!smp.present)
                return false;
        }
    }
    return true;
}

std::vector<std::optional<double>> variable_series(const Dataset& ds, const SiteId& site,
                                                   WindVar var)
{
    const WindSeries& s = ds.series_for(site);
    std::vector<std::optional<double>> out(s.samples.size());
    for (std::size_t i = 0; i < s.samples.size(); ++i) {
        if (s.samples[i].present)
            out[i] = s.samples[i].value(var);
    }
    return out;
}

std::vector<double> complete_series(const Dataset& ds, const SiteId& site, WindVar var)
{
    const WindSeries& s = ds.series_for(site);
    std::vector<double> out;
    out.reserve(s.samples.size());
    for (std::size_t i = 0; i < s.samples.size(); ++i) {
        if (!s.samples[i].present)
            throw NumericError("site '" + site + "' has a missing sample on " +
                               format_date(ds.date_at(int(i))) +
                               "; fill missing values first");
        out.push_back(s.samples[i].value(var));
    }
    return out;
}

} // namespace windkit
