#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "windkit/core.hpp"

namespace windkit {

// On-disk dataset layout: one UTF-8 CSV per site named <site>.csv, header
//   date,wind_avg_kmh,wind_gust_kmh,wind_dir_deg
// one row per consecutive day sorted ascending, dates in ISO-8601. A missing
// day keeps its row with the token "NA" in all three numeric columns (empty
// fields are accepted on read, never written). Values are written in the
// shortest decimal form that round-trips exactly.
inline constexpr const char* kCsvHeader = "date,wind_avg_kmh,wind_gust_kmh,wind_dir_deg";
inline constexpr const char* kMissingToken = "NA";

/// Non-fatal finding attached to a specific cell of a specific file.
struct Diagnostic {
    std::string file;
    int row = 0; // 1-based physical line number
    std::string column;
    std::string message;

    std::string str() const;
};

/// Parses and validates one CSV per site into an aligned Dataset.
/// Warning-level findings (e.g. gust below average speed) are appended to
/// `warnings` when provided; everything else throws DataError with the file,
/// row and column named.
Dataset read_dataset(const std::vector<std::filesystem::path>& paths,
                     std::vector<Diagnostic>* warnings = nullptr);

/// Emits one <site>.csv per series under `dir` (created if needed) and
/// returns the written paths in dataset order. read_dataset over the result
/// reproduces the dataset exactly.
std::vector<std::filesystem::path> write_dataset(const Dataset& ds,
                                                 const std::filesystem::path& dir);

} // namespace windkit
