#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "windkit/core.hpp"

namespace windkit {

enum class AcfNormalization {
    Segment, // each lag normalized by the two overlapping segments' own moments
    Global   // classic stationary estimator with one global mean and variance
};

/// Auto-correlation over lags -K..K, symmetric with R(0) = 1. Lags whose
/// overlapping segments are too short or constant (under Segment
/// normalization) carry NaN.
struct AcfResult {
    int max_lag = 0;
    std::vector<double> values; // length 2*max_lag+1; index max_lag+k holds R(k)

    double at(int lag) const { return values[std::size_t(max_lag + lag)]; }

    std::vector<int> lags() const
    {
        std::vector<int> out;
        out.reserve(values.size());
        for (int k = -max_lag; k <= max_lag; ++k)
            out.push_back(k);
        return out;
    }
};

/// Throws NumericError for a constant series, DataError for K outside
/// [0, n-1].
AcfResult autocorrelation(std::span<const double> xs, int max_lag,
                          AcfNormalization norm = AcfNormalization::Segment);

enum class SignificanceBand { Strong, Weak, None };

std::string_view to_string(SignificanceBand b);

struct CorrResult {
    double r = 0.0;
    int n = 0;
    double p_two_tailed = 1.0;
    SignificanceBand band = SignificanceBand::None;
};

SignificanceBand band_from_p(double p);

/// Pearson correlation with a two-tailed t-test on n-2 degrees of freedom.
/// Requires equal lengths, n >= 3 and both inputs nonconstant.
CorrResult pearson(std::span<const double> xs, std::span<const double> ys);

/// Correlation coefficient only; requires equal lengths and n >= 2. NaN when
/// either input is constant.
double pearson_r(std::span<const double> xs, std::span<const double> ys);

/// Upper-triangular matrix of pairwise lag-0 correlations of one variable
/// across sites; the diagonal is defined as r = 1. Requires a complete
/// dataset.
struct CrossSiteMatrix {
    std::vector<SiteId> sites;
    std::vector<CorrResult> cells; // row-major upper triangle including diagonal

    const CorrResult& at(std::size_t i, std::size_t j) const;
};

CrossSiteMatrix cross_site_matrix(const Dataset& ds, WindVar var);

struct HistogramSpec {
    enum class Kind { Linear, Polar };
    Kind kind = Kind::Linear;
    int bin_count = 0;
    double lo = 0.0; // Linear: range start. Polar: ignored; sectors cover the
    double hi = 0.0; // full circle with the first sector centered on 0 deg.
};

/// Linear spec with 2 km/h bins from 0 up to `max_value` rounded up.
HistogramSpec speed_histogram_spec(double max_value);

/// 16 compass sectors of 22.5 deg, first sector centered on North.
HistogramSpec wind_rose_spec();

struct Histogram {
    HistogramSpec spec;
    std::vector<std::size_t> counts;
    std::vector<double> frequencies; // counts / n_binned; sums to 1 when n_binned > 0
    std::size_t n_binned = 0;
    std::size_t n_overflow = 0; // linear kind only: values outside [lo, hi)

    double bin_lo(int i) const;
    double bin_hi(int i) const;
    double bin_center(int i) const;
};

/// Throws DataError for an invalid spec or empty input. Polar values are
/// taken modulo 360.
Histogram histogram(std::span<const double> xs, const HistogramSpec& spec);

/// Label for a 16-sector wind rose bin: N, NNE, NE, ... NNW.
std::string_view compass_label(int sector_index);

/// Deterministic i.i.d. Gaussian surrogate of the same length with sample
/// mean and standard deviation matched to xs exactly (standardize then
/// rescale). Intended as the reference overlay in auto-correlation reports.
/// Throws NumericError for constant input.
std::vector<double> gaussian_comparator(std::span<const double> xs, std::uint64_t seed);

struct Moments {
    int n = 0;
    double mean = 0.0;
    double stddev = 0.0; // sample standard deviation (n-1)
    double min = 0.0;
    double max = 0.0;
};

Moments moments(std::span<const double> xs);

} // namespace windkit
