#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "windkit/core.hpp"
#include "windkit/spline.hpp"

namespace windkit {

enum class InterpMethod {
    MA2, // mean of the two immediate neighbors
    MA4, // mean of two neighbors on each side
    QS   // cubic spline through all present points
};

std::string_view to_string(InterpMethod m);
InterpMethod parse_interp_method(std::string_view s); // throws DataError on unknown tag

using OptSeries = std::vector<std::optional<double>>;

/// True when `method` can estimate index `t` of `xs` (neighbors present for
/// the MA methods; for QS at least 4 present points besides t and present
/// points on both sides of t).
bool interp_applicable(std::span<const std::optional<double>> xs, std::size_t t,
                       InterpMethod method);

/// Estimate of xs[t] computed as if xs[t] were absent. Throws NumericError
/// when the method is not applicable at t and DataError for t out of range.
double interpolate_at(std::span<const std::optional<double>> xs, std::size_t t,
                      InterpMethod method, SplineBoundary boundary = SplineBoundary::NotAKnot);

struct LooCvResult {
    double rmse = 0.0;
    int n_scored = 0;  // present points the method could predict
    int n_skipped = 0; // present points skipped (method inapplicable there)
};

/// Leave-one-out cross-validation: predict each present point with that point
/// held out and score by RMSE. Throws NumericError when no point is scorable.
LooCvResult loo_cv_rmse(std::span<const std::optional<double>> xs, InterpMethod method,
                        SplineBoundary boundary = SplineBoundary::NotAKnot);

/// New dataset with every absent sample replaced per-variable. Direction is
/// interpolated on the circle (unwrapped before estimation, wrapped back).
/// Throws NumericError naming site, variable and date on an uninterpolatable
/// gap. A complete dataset is returned unchanged.
Dataset fill_missing(const Dataset& ds, InterpMethod method,
                     SplineBoundary boundary = SplineBoundary::NotAKnot);

/// Wraps an angle into [0, 360).
double wrap_degrees(double deg);

/// Cumulative shortest-arc lift: each present value is shifted by a multiple
/// of 360 so consecutive present values differ by at most 180 in magnitude.
/// Absent entries are preserved.
OptSeries unwrap_degrees(std::span<const std::optional<double>> xs);

} // namespace windkit
