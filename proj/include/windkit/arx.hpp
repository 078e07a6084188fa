#pragma once

#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "windkit/core.hpp"

namespace windkit {

/// Linear regressor with an auto-regressive output kernel and one input
/// kernel per exogenous site:
///
///   A(z) y(t) = sum_s B_s(z) u_s(t) + e(t)
///
/// A(z) = 1 + a[0] z^-1 + ... + a[m-1] z^-m is monic; the leading 1 is
/// implicit and never stored. B_s(z) = b[s][0] + b[s][1] z^-1 + ... has k
/// taps, so the j = 0 tap sees the input's current-day value. One-step
/// prediction therefore expands to
///
///   yhat(t) = sum_i (-a[i-1]) y(t-i) + sum_s sum_j b[s][j] u_s(t-j)
///
/// i.e. the stored A coefficients enter the prediction negated. Published
/// polynomial coefficient sets load verbatim under this convention.
struct ArxModel {
    SiteId target;
    WindVar variable = WindVar::Avg;
    std::vector<SiteId> inputs;
    int m = 0; // output kernel order (past outputs used)
    int k = 0; // input kernel taps per exogenous site (current day plus k-1 past)
    std::vector<double> a;              // a[0..m-1]
    std::vector<std::vector<double>> b; // one k-vector per input site, in `inputs` order

    int parameter_count() const { return m + k * int(inputs.size()); }
    /// First day index with full regression history.
    int first_usable_row() const { return std::max(m, inputs.empty() ? 0 : k - 1); }
    void validate() const; // throws DataError on inconsistent shape
};

struct FitReport {
    double fitness = 0.0; // percent, 100 = perfect, 0 = mean predictor
    double rmse = 0.0;
    double fpe = 0.0; // Akaike final prediction error
    std::vector<double> residuals;
    int n_params = 0;
    int n_samples = 0;
    int first_row = 0;             // day index of the first residual
    double a_spectral_radius = 0.0; // largest |root| of the output kernel
    bool a_stable = true;          // all roots strictly inside the unit circle
};

/// Normalized goodness of fit: 100 * (1 - |y - yhat| / |y - mean(y)|).
/// Throws NumericError for constant y, DataError on length mismatch.
double fitness(std::span<const double> y, std::span<const double> yhat);

/// sqrt(mean squared error). Throws DataError on empty or mismatched input.
double rmse(std::span<const double> y, std::span<const double> yhat);

/// Akaike's final prediction error, (rss/n) * (1 + d/n) / (1 - d/n).
/// Throws DataError unless n_samples > n_params >= 0 and rss >= 0.
double fpe(double residual_sum_squares, int n_samples, int n_params);

/// One-step prediction from explicit history windows, both chronological:
/// y_hist covers y(t-m..t-1), each u_hist covers u(t-k+1..t).
double predict_one_step(const ArxModel& model, std::span<const double> y_hist,
                        const std::vector<std::vector<double>>& u_hists);

/// Same prediction derived through the polynomial form A(z)y = B(z)u over
/// whole series; an independent evaluation route used to cross-check the
/// expanded form. `t` must have full history.
double predict_polynomial(const ArxModel& model, std::span<const double> y,
                          const std::vector<std::vector<double>>& us, int t);

/// One-step predictions for every day with full history (day indices
/// first_usable_row()..n-1), from whole series.
std::vector<double> replay(const ArxModel& model, std::span<const double> y,
                           const std::vector<std::vector<double>>& us);

/// Replay plus all evaluation metrics over the usable window.
FitReport evaluate(const ArxModel& model, std::span<const double> y,
                   const std::vector<std::vector<double>>& us);

/// Metrics over the window starting at day index `first_scored_row` (at least
/// first_usable_row()). FPE is NaN when the window has no more rows than
/// parameters.
FitReport evaluate_from(const ArxModel& model, std::span<const double> y,
                        const std::vector<std::vector<double>>& us, int first_scored_row);

/// Least-squares identification of an ArxModel on a complete dataset,
/// minimizing the sum of squared one-step residuals over all days with full
/// history. Solved by orthogonal decomposition of the regressor matrix; a
/// rank-deficient regressor is an error naming the collinear columns.
std::pair<ArxModel, FitReport> fit(const Dataset& ds, const SiteId& target,
                                   const std::vector<SiteId>& inputs, WindVar var, int m, int k);

struct ScanRow {
    int m = 0;
    int k = 0;
    FitReport report;
};

/// Fits every (m, k) combination and returns rows sorted by FPE ascending
/// (ties by m then k).
std::vector<ScanRow> order_scan(const Dataset& ds, const SiteId& target,
                                const std::vector<SiteId>& inputs, WindVar var,
                                std::span<const int> m_set, std::span<const int> k_set);

/// Flat text model format, versioned, exact round-trip.
void save_model(const ArxModel& model, const std::filesystem::path& path);
ArxModel load_model(const std::filesystem::path& path);

} // namespace windkit
