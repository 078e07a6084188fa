#include "windkit/interpolate.hpp"

#include <cmath>
#include <string>

#include "windkit/errors.hpp"

namespace windkit {

namespace {

bool ma_applicable(std::span<const std::optional<double>> xs, std::size_t t, std::size_t half)
{
    if (t < half || t + half >= xs.size())
        return false;
    for (std::size_t d = 1; d <= half; ++d) {
        if (!xs[t - d] || !xs[t + d])
            return false;
    }
    return true;
}

double ma_estimate(std::span<const std::optional<double>> xs, std::size_t t, std::size_t half)
{
    double sum = 0.0;
    for (std::size_t d = 1; d <= half; ++d)
        sum += *xs[t - d] + *xs[t + d];
    return sum / double(2 * half);
}

struct SplineKnots {
    std::vector<double> xs;
    std::vector<double> ys;
    bool left_of_t = false;
    bool right_of_t = false;
};

SplineKnots collect_knots(std::span<const std::optional<double>> xs, std::size_t t)
{
    SplineKnots k;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i == t || !xs[i])
            continue;
        k.xs.push_back(double(i));
        k.ys.push_back(*xs[i]);
        if (i < t)
            k.left_of_t = true;
        else
            k.right_of_t = true;
    }
    return k;
}

bool qs_applicable(std::span<const std::optional<double>> xs, std::size_t t)
{
    const SplineKnots k = collect_knots(xs, t);
    return k.xs.size() >= 4 && k.left_of_t && k.right_of_t;
}

} // namespace

std::string_view to_string(InterpMethod m)
{
    switch (m) {
    case InterpMethod::MA2: return "ma2";
    case InterpMethod::MA4: return "ma4";
    default: return "qs";
    }
}

InterpMethod parse_interp_method(std::string_view s)
{
    if (s == "ma2")
        return InterpMethod::MA2;
    if (s == "ma4")
        return InterpMethod::MA4;
    if (s == "qs")
        return InterpMethod::QS;
    throw DataError("unknown interpolation method '" + std::string(s) +
                    "' (expected ma2, ma4 or qs)");
}

bool interp_applicable(std::span<const std::optional<double>> xs, std::size_t t,
                       InterpMethod method)
{
    if (t >= xs.size())
        return false;
    switch (method) {
    case InterpMethod::MA2: return ma_applicable(xs, t, 1);
    case InterpMethod::MA4: return ma_applicable(xs, t, 2);
    default: return qs_applicable(xs, t);
    }
}

double interpolate_at(std::span<const std::optional<double>> xs, std::size_t t,
                      InterpMethod method, SplineBoundary boundary)
{
    if (t >= xs.size())
        throw DataError("interpolation index " + std::to_string(t) + " out of range (length " +
                        std::to_string(xs.size()) + ")");
    switch (method) {
    case InterpMethod::MA2:
        if (!ma_applicable(xs, t, 1))
            throw NumericError("ma2 needs both immediate neighbors present at index " +
                               std::to_string(t));
        return ma_estimate(xs, t, 1);
    case InterpMethod::MA4:
        if (!ma_applicable(xs, t, 2))
            throw NumericError("ma4 needs two present neighbors on each side at index " +
                               std::to_string(t));
        return ma_estimate(xs, t, 2);
    default: {
        const SplineKnots k = collect_knots(xs, t);
        if (k.xs.size() < 4)
            throw NumericError("qs needs at least 4 present points besides index " +
                               std::to_string(t));
        if (!k.left_of_t || !k.right_of_t)
            throw NumericError("qs cannot extrapolate past the ends (index " + std::to_string(t) +
                               ")");
        return CubicSpline(k.xs, k.ys, boundary)(double(t));
    }
    }
}

LooCvResult loo_cv_rmse(std::span<const std::optional<double>> xs, InterpMethod method,
                        SplineBoundary boundary)
{
    LooCvResult res;
    double sum_sq = 0.0;
    for (std::size_t t = 0; t < xs.size(); ++t) {
        if (!xs[t])
            continue;
        if (!interp_applicable(xs, t, method)) {
            ++res.n_skipped;
            continue;
        }
        const double predicted = interpolate_at(xs, t, method, boundary);
        const double err = predicted - *xs[t];
        sum_sq += err * err;
        ++res.n_scored;
    }
    if (res.n_scored == 0)
        throw NumericError("leave-one-out: no point is predictable with this method");
    res.rmse = std::sqrt(sum_sq / double(res.n_scored));
    return res;
}

double wrap_degrees(double deg)
{
    double w = std::fmod(deg, 360.0);
    if (w < 0.0)
        w += 360.0;
    if (w == 360.0) // a tiny negative remainder can round up to the seam
        w = 0.0;
    return w;
}

OptSeries unwrap_degrees(std::span<const std::optional<double>> xs)
{
    OptSeries out(xs.begin(), xs.end());
    bool have_prev = false;
    double prev_raw = 0.0, prev_lifted = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!out[i])
            continue;
        const double raw = *out[i];
        if (!have_prev) {
            prev_lifted = raw;
            have_prev = true;
        } else {
            prev_lifted += std::remainder(raw - prev_raw, 360.0);
        }
        prev_raw = raw;
        out[i] = prev_lifted;
    }
    return out;
}

Dataset fill_missing(const Dataset& ds, InterpMethod method, SplineBoundary boundary)
{
    std::vector<WindSeries> filled;
    filled.reserve(ds.series().size());
    for (const WindSeries& s : ds.series()) {
        WindSeries out = s;
        std::vector<std::size_t> gaps;
        for (std::size_t t = 0; t < s.samples.size(); ++t) {
            if (!s.samples[t].present)
                gaps.push_back(t);
        }
        if (gaps.empty()) {
            filled.push_back(std::move(out));
            continue;
        }
        for (WindVar var : kAllVars) {
            OptSeries xs(s.samples.size());
            for (std::size_t t = 0; t < s.samples.size(); ++t) {
                if (s.samples[t].present)
                    xs[t] = s.samples[t].value(var);
            }
            const bool circular = var == WindVar::Dir;
            const OptSeries work = circular ? unwrap_degrees(xs) : std::move(xs);
            for (std::size_t t : gaps) {
                double v;
                try {
                    v = interpolate_at(work, t, method, boundary);
                } catch (const NumericError& e) {
                    throw NumericError("uninterpolatable gap at " + s.site + "/" +
                                       std::string(to_string(var)) + " " +
                                       format_date(ds.date_at(int(t))) + ": " + e.what());
                }
                if (circular)
                    v = wrap_degrees(v);
                WindSample& smp = out.samples[t];
                switch (var) {
                case WindVar::Avg: smp.avg_speed = v; break;
                case WindVar::Gust: smp.gust = v; break;
                default: smp.direction = v; break;
                }
            }
        }
        for (std::size_t t : gaps)
            out.samples[t].present = true;
        filled.push_back(std::move(out));
    }
    return Dataset(std::move(filled));
}

} // namespace windkit
