#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "windkit/core.hpp"

namespace testutil {

// Deterministic uniform in [0, 1) built directly on the engine's bits so test
// data is identical everywhere.
inline double uniform01(std::mt19937_64& rng)
{
    return double(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return lo + (hi - lo) * uniform01(rng);
}

inline double gaussian(std::mt19937_64& rng)
{
    const double u1 = (double(rng() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline windkit::Day day(int y, unsigned m, unsigned d)
{
    return windkit::Day{std::chrono::year_month_day{
        std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}}};
}

inline const windkit::Day kStart = day(2015, 10, 1);

inline windkit::WindSeries make_series(const windkit::SiteId& site,
                                       const std::vector<std::optional<double>>& avg,
                                       windkit::Day start = kStart)
{
    windkit::WindSeries s;
    s.site = site;
    s.start_date = start;
    for (const auto& v : avg) {
        if (v)
            s.samples.push_back(windkit::WindSample{*v, *v + 10.0, 180.0, true});
        else
            s.samples.push_back(windkit::missing_sample());
    }
    return s;
}

inline windkit::Dataset make_dataset(const std::vector<windkit::WindSeries>& series)
{
    return windkit::Dataset(std::vector<windkit::WindSeries>(series));
}

inline windkit::Dataset random_dataset(std::mt19937_64& rng, int n_sites, int n_days,
                                       double missing_prob = 0.0)
{
    std::vector<windkit::WindSeries> series;
    for (int s = 0; s < n_sites; ++s) {
        windkit::WindSeries ws;
        ws.site = "site" + std::to_string(s);
        ws.start_date = kStart;
        for (int t = 0; t < n_days; ++t) {
            if (missing_prob > 0.0 && uniform01(rng) < missing_prob) {
                ws.samples.push_back(windkit::missing_sample());
                continue;
            }
            const double avg = uniform(rng, 0.0, 40.0);
            ws.samples.push_back(windkit::WindSample{avg, avg + uniform(rng, 0.0, 30.0),
                                                     uniform(rng, 0.0, 360.0), true});
        }
        series.push_back(std::move(ws));
    }
    return windkit::Dataset(std::move(series));
}

// Self-deleting scratch directory under the system temp root.
class TempDir {
public:
    explicit TempDir(const std::string& tag)
    {
        static std::uint64_t counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("windkit_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p)
{
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

} // namespace testutil
