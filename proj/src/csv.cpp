#include "windkit/csv.hpp"

#include <fstream>
#include <sstream>

#include "windkit/errors.hpp"
#include "windkit/numio.hpp"

namespace windkit {

namespace {

constexpr const char* kColumnNames[4] = {"date", "wind_avg_kmh", "wind_gust_kmh",
                                         "wind_dir_deg"};

[[noreturn]] void fail(const std::filesystem::path& file, int row, const std::string& column,
                       const std::string& msg)
{
    std::string where = file.filename().string() + ":" + std::to_string(row);
    if (!column.empty())
        where += ": column '" + column + "'";
    throw DataError(where + ": " + msg);
}

std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

bool is_missing_token(const std::string& s)
{
    return s.empty() || s == kMissingToken;
}

WindSeries read_series(const std::filesystem::path& path, std::vector<Diagnostic>* warnings)
{
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open '" + path.string() + "'");

    WindSeries series;
    series.site = path.stem().string();

    std::string line;
    int row = 0;
    bool have_prev_date = false;
    Day prev_date{};
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (row == 1) {
            if (line != kCsvHeader)
                fail(path, row, "", std::string("expected header '") + kCsvHeader + "', got '" +
                                        line + "'");
            continue;
        }
        if (line.empty())
            continue; // blank lines are skipped; date contiguity still applies

        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != 4)
            fail(path, row, "", "expected 4 comma-separated fields, got " +
                                    std::to_string(fields.size()));

        const auto date = parse_date(fields[0]);
        if (!date)
            fail(path, row, kColumnNames[0], "bad date '" + fields[0] + "' (expected YYYY-MM-DD)");
        if (!have_prev_date) {
            series.start_date = *date;
            have_prev_date = true;
        } else {
            if (*date == prev_date)
                fail(path, row, kColumnNames[0], "duplicate date " + fields[0]);
            if (*date != prev_date + std::chrono::days{1})
                fail(path, row, kColumnNames[0],
                     "non-contiguous dates: " + fields[0] + " follows " + format_date(prev_date));
        }
        prev_date = *date;

        const bool missing[3] = {is_missing_token(fields[1]), is_missing_token(fields[2]),
                                 is_missing_token(fields[3])};
        if (missing[0] && missing[1] && missing[2]) {
            series.samples.push_back(missing_sample());
            continue;
        }
        for (int c = 0; c < 3; ++c) {
            if (missing[c])
                fail(path, row, kColumnNames[c + 1],
                     "missing value in a row that is not fully missing");
        }

        double values[3];
        for (int c = 0; c < 3; ++c) {
            const auto v = parse_double(fields[c + 1]);
            if (!v)
                fail(path, row, kColumnNames[c + 1], "bad number '" + fields[c + 1] + "'");
            values[c] = *v;
        }
        if (values[0] < 0.0)
            fail(path, row, kColumnNames[1], "negative average speed");
        if (values[1] < 0.0)
            fail(path, row, kColumnNames[2], "negative gust");
        if (values[2] < 0.0 || values[2] > 360.0)
            fail(path, row, kColumnNames[3], "direction outside [0, 360]");
        if (values[2] == 360.0) {
            // some station feeds report North as 360
            if (warnings)
                warnings->push_back({path.filename().string(), row, kColumnNames[3],
                                     "direction 360 read as 0"});
            values[2] = 0.0;
        }
        if (values[1] < values[0] && warnings) {
            warnings->push_back({path.filename().string(), row, kColumnNames[2],
                                 "gust " + fields[2] + " below average speed " + fields[1]});
        }

        series.samples.push_back(WindSample{values[0], values[1], values[2], true});
    }
    if (series.samples.empty())
        throw DataError(path.filename().string() + ": no data rows");
    return series;
}

} // namespace

std::string Diagnostic::str() const
{
    return file + ":" + std::to_string(row) + ": column '" + column + "': " + message;
}

Dataset read_dataset(const std::vector<std::filesystem::path>& paths,
                     std::vector<Diagnostic>* warnings)
{
    if (paths.empty())
        throw DataError("no input files");
    std::vector<WindSeries> series;
    series.reserve(paths.size());
    for (const auto& p : paths)
        series.push_back(read_series(p, warnings));
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (series[i].start_date != series[0].start_date ||
            series[i].samples.size() != series[0].samples.size())
            throw DataError(
                "date ranges differ: '" + paths[i].filename().string() + "' starts " +
                format_date(series[i].start_date) + " with " +
                std::to_string(series[i].samples.size()) + " days, but '" +
                paths[0].filename().string() + "' starts " + format_date(series[0].start_date) +
                " with " + std::to_string(series[0].samples.size()) + " days");
    }
    return Dataset(std::move(series));
}

std::vector<std::filesystem::path> write_dataset(const Dataset& ds,
                                                 const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw DataError("cannot create directory '" + dir.string() + "': " + ec.message());

    std::vector<std::filesystem::path> out;
    for (const WindSeries& s : ds.series()) {
        const std::filesystem::path path = dir / (s.site + ".csv");
        std::ofstream f(path);
        if (!f)
            throw DataError("cannot write '" + path.string() + "'");
        f << kCsvHeader << '\n';
        for (std::size_t i = 0; i < s.samples.size(); ++i) {
            const WindSample& smp = s.samples[i];
            f << format_date(ds.date_at(int(i))) << ',';
            if (smp.present) {
                f << format_double(smp.avg_speed) << ',' << format_double(smp.gust) << ','
                  << format_double(smp.direction) << '\n';
            } else {
                f << kMissingToken << ',' << kMissingToken << ',' << kMissingToken << '\n';
            }
        }
        if (!f)
            throw DataError("write failed for '" + path.string() + "'");
        out.push_back(path);
    }
    return out;
}

} // namespace windkit
