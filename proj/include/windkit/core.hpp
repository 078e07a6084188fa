#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "windkit/date.hpp"

namespace windkit {

/// Short station identifier, e.g. "samos". Must be non-empty and contain no
/// whitespace or path separators (site ids double as file name stems).
using SiteId = std::string;

bool valid_site_id(const SiteId& id);

enum class WindVar { Avg, Gust, Dir };

inline constexpr WindVar kAllVars[] = {WindVar::Avg, WindVar::Gust, WindVar::Dir};

std::string_view to_string(WindVar v);
WindVar parse_wind_var(std::string_view s); // throws DataError on unknown selector

/// One day's record for one site. When `present` is false the numeric fields
/// carry no meaning and are ignored by every consumer.
struct WindSample {
    double avg_speed = 0.0; // km/h
    double gust = 0.0;      // km/h
    double direction = 0.0; // degrees in [0, 360), 0 = North, clockwise
    bool present = false;

    double value(WindVar v) const
    {
        switch (v) {
        case WindVar::Avg: return avg_speed;
        case WindVar::Gust: return gust;
        default: return direction;
        }
    }
};

inline WindSample missing_sample() { return WindSample{}; }

/// Daily samples for one site over a contiguous date range; gaps are
/// represented by present=false, never by omitted entries.
struct WindSeries {
    SiteId site;
    Day start_date{};
    std::vector<WindSample> samples;
};

/// Aligned collection of WindSeries sharing one date axis. Immutable after
/// construction; safe for shared concurrent reads.
class Dataset {
public:
    /// Validates alignment (shared start date and length), series length >= 1
    /// and site id uniqueness. Throws DataError on violation.
    explicit Dataset(std::vector<WindSeries> series);

    Day start_date() const { return start_; }
    int n_days() const { return int(series_.front().samples.size()); }
    Day date_at(int day_index) const { return start_ + std::chrono::days{day_index}; }

    const std::vector<WindSeries>& series() const { return series_; }
    std::vector<SiteId> site_ids() const;
    bool has_site(const SiteId& site) const;
    const WindSeries& series_for(const SiteId& site) const; // throws DataError

    /// True when no sample in any series is missing.
    bool complete() const;

private:
    Day start_{};
    std::vector<WindSeries> series_;
};

/// Length-n_days sequence of one variable for one site; absent entries where
/// the sample is missing. Throws DataError for an unknown site.
std::vector<std::optional<double>> variable_series(const Dataset& ds, const SiteId& site,
                                                   WindVar var);

/// Same, for a dataset known to be complete. Throws NumericError if any
/// sample is missing.
std::vector<double> complete_series(const Dataset& ds, const SiteId& site, WindVar var);

} // namespace windkit
