#include "windkit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include <boost/math/distributions/students_t.hpp>

#include "windkit/errors.hpp"
#include "windkit/interpolate.hpp"

namespace windkit {

namespace {

double mean_of(std::span<const double> xs)
{
    double s = 0.0;
    for (double x : xs)
        s += x;
    return s / double(xs.size());
}

// Centered cross and self sums of two equal-length spans.
struct CenteredSums {
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
};

CenteredSums centered_sums(std::span<const double> xs, std::span<const double> ys)
{
    const double mx = mean_of(xs);
    const double my = mean_of(ys);
    CenteredSums s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double a = xs[i] - mx;
        const double b = ys[i] - my;
        s.sxy += a * b;
        s.sxx += a * a;
        s.syy += b * b;
    }
    return s;
}

} // namespace

double pearson_r(std::span<const double> xs, std::span<const double> ys)
{
    if (xs.size() != ys.size())
        throw DataError("correlation inputs differ in length (" + std::to_string(xs.size()) +
                        " vs " + std::to_string(ys.size()) + ")");
    if (xs.size() < 2)
        throw DataError("correlation needs at least 2 samples");
    const CenteredSums s = centered_sums(xs, ys);
    if (s.sxx == 0.0 || s.syy == 0.0)
        return std::numeric_limits<double>::quiet_NaN();
    // Exact +-1 when the centered sums witness exact linear dependence.
    if (s.sxx == s.syy && std::abs(s.sxy) == s.sxx)
        return std::copysign(1.0, s.sxy);
    const double r = s.sxy / (std::sqrt(s.sxx) * std::sqrt(s.syy));
    return std::clamp(r, -1.0, 1.0);
}

SignificanceBand band_from_p(double p)
{
    if (p <= 0.05)
        return SignificanceBand::Strong;
    if (p <= 0.1)
        return SignificanceBand::Weak;
    return SignificanceBand::None;
}

std::string_view to_string(SignificanceBand b)
{
    switch (b) {
    case SignificanceBand::Strong: return "strong";
    case SignificanceBand::Weak: return "weak";
    default: return "none";
    }
}

CorrResult pearson(std::span<const double> xs, std::span<const double> ys)
{
    if (xs.size() != ys.size())
        throw DataError("correlation inputs differ in length (" + std::to_string(xs.size()) +
                        " vs " + std::to_string(ys.size()) + ")");
    const int n = int(xs.size());
    if (n < 3)
        throw DataError("pearson needs at least 3 samples for significance");
    const double r = pearson_r(xs, ys);
    if (std::isnan(r))
        throw NumericError("pearson is undefined for a constant input");

    CorrResult out;
    out.r = r;
    out.n = n;
    const double r2 = r * r;
    if (r2 >= 1.0) {
        out.p_two_tailed = 0.0;
    } else {
        const double t = std::abs(r) * std::sqrt(double(n - 2) / (1.0 - r2));
        const boost::math::students_t dist(double(n - 2));
        out.p_two_tailed = 2.0 * boost::math::cdf(boost::math::complement(dist, t));
    }
    out.band = band_from_p(out.p_two_tailed);
    return out;
}

AcfResult autocorrelation(std::span<const double> xs, int max_lag, AcfNormalization norm)
{
    const int n = int(xs.size());
    if (n < 2)
        throw DataError("autocorrelation needs at least 2 samples");
    if (max_lag < 0 || max_lag > n - 1)
        throw DataError("max_lag " + std::to_string(max_lag) + " out of range [0, " +
                        std::to_string(n - 1) + "]");

    AcfResult res;
    res.max_lag = max_lag;
    res.values.assign(std::size_t(2 * max_lag + 1), std::numeric_limits<double>::quiet_NaN());

    // overall variance check (also the Global normalizer)
    const CenteredSums whole = centered_sums(xs, xs);
    if (whole.sxx == 0.0)
        throw NumericError("autocorrelation is undefined for a constant series");

    const double global_mean = mean_of(xs);
    for (int k = 0; k <= max_lag; ++k) {
        double r;
        if (norm == AcfNormalization::Segment) {
            const auto head = xs.subspan(0, std::size_t(n - k));
            const auto tail = xs.subspan(std::size_t(k));
            r = (n - k >= 2) ? pearson_r(head, tail) : std::numeric_limits<double>::quiet_NaN();
        } else {
            double s = 0.0;
            for (int t = 0; t + k < n; ++t)
                s += (xs[std::size_t(t)] - global_mean) * (xs[std::size_t(t + k)] - global_mean);
            r = s / whole.sxx;
        }
        res.values[std::size_t(max_lag + k)] = r;
        res.values[std::size_t(max_lag - k)] = r;
    }
    return res;
}

const CorrResult& CrossSiteMatrix::at(std::size_t i, std::size_t j) const
{
    if (i > j)
        std::swap(i, j);
    // row-major upper triangle: row i starts after sum of previous row lengths
    const std::size_t n = sites.size();
    const std::size_t idx = i * n - i * (i + 1) / 2 + j;
    return cells[idx];
}

CrossSiteMatrix cross_site_matrix(const Dataset& ds, WindVar var)
{
    CrossSiteMatrix m;
    m.sites = ds.site_ids();
    std::vector<std::vector<double>> series;
    series.reserve(m.sites.size());
    for (const SiteId& s : m.sites)
        series.push_back(complete_series(ds, s, var));

    const int n = ds.n_days();
    for (std::size_t i = 0; i < m.sites.size(); ++i) {
        for (std::size_t j = i; j < m.sites.size(); ++j) {
            if (i == j)
                m.cells.push_back(CorrResult{1.0, n, 0.0, SignificanceBand::Strong});
            else
                m.cells.push_back(pearson(series[i], series[j]));
        }
    }
    return m;
}

HistogramSpec speed_histogram_spec(double max_value)
{
    const double hi = std::max(2.0, 2.0 * std::ceil(max_value / 2.0));
    return HistogramSpec{HistogramSpec::Kind::Linear, int(hi / 2.0), 0.0, hi};
}

HistogramSpec wind_rose_spec()
{
    return HistogramSpec{HistogramSpec::Kind::Polar, 16, 0.0, 360.0};
}

double Histogram::bin_lo(int i) const
{
    if (spec.kind == HistogramSpec::Kind::Polar) {
        const double w = 360.0 / spec.bin_count;
        return wrap_degrees((i - 0.5) * w);
    }
    return spec.lo + (spec.hi - spec.lo) * i / spec.bin_count;
}

double Histogram::bin_hi(int i) const
{
    if (spec.kind == HistogramSpec::Kind::Polar) {
        const double w = 360.0 / spec.bin_count;
        return wrap_degrees((i + 0.5) * w);
    }
    return spec.lo + (spec.hi - spec.lo) * (i + 1) / spec.bin_count;
}

double Histogram::bin_center(int i) const
{
    if (spec.kind == HistogramSpec::Kind::Polar)
        return wrap_degrees(i * 360.0 / spec.bin_count);
    return spec.lo + (spec.hi - spec.lo) * (i + 0.5) / spec.bin_count;
}

Histogram histogram(std::span<const double> xs, const HistogramSpec& spec)
{
    if (spec.bin_count <= 0)
        throw DataError("histogram needs a positive bin count");
    if (xs.empty())
        throw DataError("histogram needs a nonempty input");
    if (spec.kind == HistogramSpec::Kind::Linear && !(spec.hi > spec.lo))
        throw DataError("histogram range must satisfy lo < hi");

    Histogram h;
    h.spec = spec;
    h.counts.assign(std::size_t(spec.bin_count), 0);

    if (spec.kind == HistogramSpec::Kind::Polar) {
        const double w = 360.0 / spec.bin_count;
        for (double x : xs) {
            // shift by half a sector so sector 0 is centered on 0 deg
            const double shifted = wrap_degrees(x + w / 2.0);
            const int idx = std::min(int(shifted / w), spec.bin_count - 1);
            ++h.counts[std::size_t(idx)];
            ++h.n_binned;
        }
    } else {
        const double width = (spec.hi - spec.lo) / spec.bin_count;
        for (double x : xs) {
            if (x < spec.lo || x >= spec.hi) {
                ++h.n_overflow;
                continue;
            }
            const int idx = std::min(int((x - spec.lo) / width), spec.bin_count - 1);
            ++h.counts[std::size_t(idx)];
            ++h.n_binned;
        }
    }

    h.frequencies.assign(h.counts.size(), 0.0);
    if (h.n_binned > 0) {
        for (std::size_t i = 0; i < h.counts.size(); ++i)
            h.frequencies[i] = double(h.counts[i]) / double(h.n_binned);
    }
    return h;
}

std::string_view compass_label(int sector_index)
{
    static constexpr std::string_view kLabels[16] = {"N",  "NNE", "NE", "ENE", "E",  "ESE",
                                                     "SE", "SSE", "S",  "SSW", "SW", "WSW",
                                                     "W",  "WNW", "NW", "NNW"};
    return kLabels[sector_index & 15];
}

Moments moments(std::span<const double> xs)
{
    if (xs.empty())
        throw DataError("moments need a nonempty input");
    Moments m;
    m.n = int(xs.size());
    m.mean = mean_of(xs);
    double ss = 0.0;
    m.min = xs[0];
    m.max = xs[0];
    for (double x : xs) {
        ss += (x - m.mean) * (x - m.mean);
        m.min = std::min(m.min, x);
        m.max = std::max(m.max, x);
    }
    m.stddev = xs.size() > 1 ? std::sqrt(ss / double(xs.size() - 1)) : 0.0;
    return m;
}

std::vector<double> gaussian_comparator(std::span<const double> xs, std::uint64_t seed)
{
    const Moments m = moments(xs);
    if (m.stddev == 0.0 || xs.size() < 2)
        throw NumericError("comparator is undefined for a constant series");

    // Engine output is bit-exact across platforms; the normal transform is
    // done by hand (Box-Muller) so the whole series is too.
    std::mt19937_64 engine(seed);
    const auto uniform = [&engine]() {
        return (double(engine() >> 11) + 0.5) * 0x1.0p-53; // (0, 1)
    };
    std::vector<double> z(xs.size());
    for (std::size_t i = 0; i < z.size(); i += 2) {
        const double u1 = uniform();
        const double u2 = uniform();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * std::numbers::pi * u2;
        z[i] = rad * std::cos(ang);
        if (i + 1 < z.size())
            z[i + 1] = rad * std::sin(ang);
    }

    // exact standardize-then-rescale so sample moments match by construction
    const Moments zm = moments(z);
    std::vector<double> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        out[i] = m.mean + m.stddev * ((z[i] - zm.mean) / zm.stddev);
    return out;
}

} // namespace windkit
