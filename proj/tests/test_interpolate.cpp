#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "testutil.hpp"
#include "windkit/errors.hpp"
#include "windkit/interpolate.hpp"

using namespace windkit;

namespace {

// Independent spline oracle: solves the full per-interval coefficient system
// S_i(x) = A_i + B_i x + C_i x^2 + D_i x^3 with a dense LU factorization.
// Shares no code with the production tridiagonal route.
class DenseSplineOracle {
public:
    DenseSplineOracle(const std::vector<double>& xs, const std::vector<double>& ys,
                      SplineBoundary boundary)
        : x_(xs)
    {
        const int n = int(xs.size());
        const int nseg = n - 1;
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(4 * nseg, 4 * nseg);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(4 * nseg);
        int row = 0;
        const auto value_row = [&](int seg, double x, double y) {
            A(row, 4 * seg + 0) = 1.0;
            A(row, 4 * seg + 1) = x;
            A(row, 4 * seg + 2) = x * x;
            A(row, 4 * seg + 3) = x * x * x;
            rhs(row) = y;
            ++row;
        };
        for (int i = 0; i < nseg; ++i) {
            value_row(i, xs[i], ys[i]);
            value_row(i, xs[i + 1], ys[i + 1]);
        }
        for (int i = 0; i + 1 < nseg; ++i) {
            const double x = xs[i + 1];
            // first derivatives match
            A(row, 4 * i + 1) = 1.0;
            A(row, 4 * i + 2) = 2.0 * x;
            A(row, 4 * i + 3) = 3.0 * x * x;
            A(row, 4 * (i + 1) + 1) = -1.0;
            A(row, 4 * (i + 1) + 2) = -2.0 * x;
            A(row, 4 * (i + 1) + 3) = -3.0 * x * x;
            ++row;
            // second derivatives match
            A(row, 4 * i + 2) = 2.0;
            A(row, 4 * i + 3) = 6.0 * x;
            A(row, 4 * (i + 1) + 2) = -2.0;
            A(row, 4 * (i + 1) + 3) = -6.0 * x;
            ++row;
        }
        if (boundary == SplineBoundary::Natural) {
            A(row, 2) = 2.0;
            A(row, 3) = 6.0 * xs.front();
            ++row;
            A(row, 4 * (nseg - 1) + 2) = 2.0;
            A(row, 4 * (nseg - 1) + 3) = 6.0 * xs.back();
            ++row;
        } else {
            // not-a-knot: third derivative continuous across the first and
            // last interior knots
            A(row, 3) = 1.0;
            A(row, 4 * 1 + 3) = -1.0;
            ++row;
            A(row, 4 * (nseg - 2) + 3) = 1.0;
            A(row, 4 * (nseg - 1) + 3) = -1.0;
            ++row;
        }
        REQUIRE(row == 4 * nseg);
        coeff_ = Eigen::FullPivLU<Eigen::MatrixXd>(A).solve(rhs);
    }

    double operator()(double x) const
    {
        int seg = 0;
        while (seg + 2 < int(x_.size()) && x >= x_[seg + 1])
            ++seg;
        const double* c = coeff_.data() + 4 * seg;
        return c[0] + x * (c[1] + x * (c[2] + x * c[3]));
    }

private:
    std::vector<double> x_;
    Eigen::VectorXd coeff_;
};

OptSeries remove_at(const std::vector<double>& xs, std::size_t t)
{
    OptSeries out(xs.begin(), xs.end());
    out[t] = std::nullopt;
    return out;
}

double cubic(double x) { return x * x * x - 2.0 * x; }

} // namespace

TEST_CASE("moving-average estimates are neighbor means")
{
    const OptSeries xs = {2.0, std::nullopt, 4.0};
    CHECK(interpolate_at(xs, 1, InterpMethod::MA2) == 3.0);

    const OptSeries xs4 = {1.0, 2.0, std::nullopt, 4.0, 5.0};
    CHECK(interpolate_at(xs4, 2, InterpMethod::MA2) == 3.0);
    CHECK(interpolate_at(xs4, 2, InterpMethod::MA4) == 3.0);
}

TEST_CASE("moving averages refuse boundaries and gaps instead of extrapolating")
{
    const OptSeries xs = {std::nullopt, 2.0, 3.0, 4.0, 5.0};
    CHECK_THROWS_AS(interpolate_at(xs, 0, InterpMethod::MA2), NumericError);
    CHECK_THROWS_AS(interpolate_at(xs, 1, InterpMethod::MA4), NumericError);

    const OptSeries gap = {1.0, std::nullopt, std::nullopt, 4.0, 5.0};
    CHECK_THROWS_AS(interpolate_at(gap, 1, InterpMethod::MA2), NumericError);
    CHECK_THROWS_AS(interpolate_at(OptSeries{1.0, 2.0}, 5, InterpMethod::MA2), DataError);
}

TEST_CASE("spline prediction matches the dense oracle and recovers a cubic")
{
    std::vector<double> ys;
    for (int x = 0; x <= 9; ++x)
        ys.push_back(cubic(double(x)));
    const OptSeries held_out = remove_at(ys, 5);

    std::vector<double> knot_x, knot_y;
    for (int x = 0; x <= 9; ++x) {
        if (x != 5) {
            knot_x.push_back(double(x));
            knot_y.push_back(cubic(double(x)));
        }
    }

    SUBCASE("default boundary reproduces the cubic exactly")
    {
        const double predicted = interpolate_at(held_out, 5, InterpMethod::QS);
        CHECK(std::abs(predicted - cubic(5.0)) / std::abs(cubic(5.0)) <= 1e-6);
        const DenseSplineOracle oracle(knot_x, knot_y, SplineBoundary::NotAKnot);
        CHECK(predicted == doctest::Approx(oracle(5.0)).epsilon(1e-9));
    }

    SUBCASE("natural boundary agrees with its oracle too")
    {
        const double predicted =
            interpolate_at(held_out, 5, InterpMethod::QS, SplineBoundary::Natural);
        const DenseSplineOracle oracle(knot_x, knot_y, SplineBoundary::Natural);
        CHECK(predicted == doctest::Approx(oracle(5.0)).epsilon(1e-9));
    }
}

TEST_CASE("spline interior prediction is exact on random cubics")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 8 + int(rng() % 10);
        const double c3 = testutil::uniform(rng, -2.0, 2.0);
        const double c2 = testutil::uniform(rng, -5.0, 5.0);
        const double c1 = testutil::uniform(rng, -10.0, 10.0);
        const double c0 = testutil::uniform(rng, -20.0, 20.0);
        const auto poly = [&](double x) { return ((c3 * x + c2) * x + c1) * x + c0; };
        std::vector<double> ys;
        for (int i = 0; i < n; ++i)
            ys.push_back(poly(double(i)));
        const std::size_t t = 1 + rng() % std::size_t(n - 2);
        const double predicted = interpolate_at(remove_at(ys, t), t, InterpMethod::QS);
        const double truth = poly(double(t));
        CHECK(std::abs(predicted - truth) <= 1e-6 * std::max(1.0, std::abs(truth)));
    }
}

TEST_CASE("spline refuses extrapolation and tiny knot sets")
{
    const OptSeries ends = {std::nullopt, 1.0, 2.0, 3.0, 4.0, 5.0};
    CHECK_THROWS_AS(interpolate_at(ends, 0, InterpMethod::QS), NumericError);
    const OptSeries tiny = {1.0, std::nullopt, 2.0, 3.0};
    CHECK_THROWS_AS(interpolate_at(tiny, 1, InterpMethod::QS), NumericError);
}

TEST_CASE("leave-one-out identities")
{
    const OptSeries constant = {5.0, 5.0, 5.0, 5.0, 5.0};
    CHECK(loo_cv_rmse(constant, InterpMethod::MA2).rmse == 0.0);

    const OptSeries linear = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
    const LooCvResult r = loo_cv_rmse(linear, InterpMethod::MA2);
    CHECK(r.rmse == 0.0);
    CHECK(r.n_scored == 4);
    CHECK(r.n_skipped == 2); // the two boundary points
}

TEST_CASE("leave-one-out equals the literal hold-out loop bit for bit")
{
    std::mt19937_64 rng(77);
    for (InterpMethod method : {InterpMethod::MA2, InterpMethod::MA4, InterpMethod::QS}) {
        OptSeries xs(60);
        for (auto& v : xs) {
            if (testutil::uniform01(rng) > 0.1)
                v = testutil::uniform(rng, 0.0, 30.0);
        }
        double sum_sq = 0.0;
        int scored = 0;
        for (std::size_t t = 0; t < xs.size(); ++t) {
            if (!xs[t] || !interp_applicable(xs, t, method))
                continue;
            const double p = interpolate_at(xs, t, method);
            sum_sq += (p - *xs[t]) * (p - *xs[t]);
            ++scored;
        }
        REQUIRE(scored > 0);
        const LooCvResult got = loo_cv_rmse(xs, method);
        CHECK(got.n_scored == scored);
        CHECK(got.rmse == std::sqrt(sum_sq / double(scored))); // bit-level agreement
    }
}

TEST_CASE("spline cross-validates better than ma2 on smooth series with noise")
{
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        std::mt19937_64 rng(seed);
        OptSeries xs(100);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double t = double(i);
            xs[i] = 0.002 * t * t * t - t + 0.2 * testutil::gaussian(rng);
        }
        const double qs = loo_cv_rmse(xs, InterpMethod::QS).rmse;
        const double ma2 = loo_cv_rmse(xs, InterpMethod::MA2).rmse;
        CHECK(qs <= ma2);
    }
}

TEST_CASE("fill_missing is an identity on complete datasets")
{
    std::mt19937_64 rng(13);
    const Dataset ds = testutil::random_dataset(rng, 2, 30, 0.0);
    const Dataset filled = fill_missing(ds, InterpMethod::QS);
    for (const SiteId& site : ds.site_ids()) {
        for (WindVar var : kAllVars)
            CHECK(variable_series(filled, site, var) == variable_series(ds, site, var));
    }
}

TEST_CASE("fill_missing repairs each variable independently")
{
    WindSeries s;
    s.site = "one";
    s.start_date = testutil::kStart;
    s.samples = {WindSample{2.0, 20.0, 90.0, true}, missing_sample(),
                 WindSample{4.0, 30.0, 110.0, true}};
    const Dataset filled = fill_missing(Dataset({s}), InterpMethod::MA2);
    const WindSample& f = filled.series()[0].samples[1];
    CHECK(f.present);
    CHECK(f.avg_speed == 3.0);
    CHECK(f.gust == 25.0);
    CHECK(f.direction == 100.0);
}

TEST_CASE("direction interpolates across the north seam")
{
    WindSeries s;
    s.site = "one";
    s.start_date = testutil::kStart;
    s.samples = {WindSample{1.0, 2.0, 350.0, true}, missing_sample(),
                 WindSample{1.0, 2.0, 10.0, true}};
    const Dataset filled = fill_missing(Dataset({s}), InterpMethod::MA2);
    CHECK(filled.series()[0].samples[1].direction == 0.0);
}

TEST_CASE("uninterpolatable gaps are reported with site, variable and date")
{
    WindSeries s;
    s.site = "one";
    s.start_date = testutil::kStart;
    s.samples = {WindSample{1.0, 2.0, 0.0, true}, missing_sample(), missing_sample(),
                 WindSample{4.0, 5.0, 0.0, true}};
    CHECK_THROWS_WITH_AS(fill_missing(Dataset({s}), InterpMethod::MA2),
                         doctest::Contains("uninterpolatable gap"), NumericError);
}

TEST_CASE("angle helpers")
{
    CHECK(wrap_degrees(-5.0) == 355.0);
    CHECK(wrap_degrees(725.0) == 5.0);
    CHECK(wrap_degrees(0.0) == 0.0);

    const OptSeries lifted = unwrap_degrees(OptSeries{350.0, 10.0, 30.0});
    CHECK(*lifted[0] == 350.0);
    CHECK(*lifted[1] == 370.0);
    CHECK(*lifted[2] == 390.0);

    const OptSeries with_gap = unwrap_degrees(OptSeries{10.0, std::nullopt, 350.0});
    CHECK(*with_gap[2] == -10.0);
}
