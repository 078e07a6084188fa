#include "windkit/spline.hpp"

#include <algorithm>
#include <string>

#include "windkit/errors.hpp"

namespace windkit {

namespace {

// Solves a tridiagonal system in place (Thomas algorithm). lower[i] multiplies
// x[i-1] in row i, upper[i] multiplies x[i+1].
std::vector<double> solve_tridiagonal(std::vector<double> lower, std::vector<double> diag,
                                      std::vector<double> upper, std::vector<double> rhs)
{
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i];
    return x;
}

} // namespace

CubicSpline::CubicSpline(std::vector<double> xs, std::vector<double> ys, SplineBoundary boundary)
    : x_(std::move(xs)), y_(std::move(ys))
{
    const std::size_t n = x_.size();
    if (n != y_.size())
        throw NumericError("spline: knot and value counts differ");
    const std::size_t min_knots = boundary == SplineBoundary::NotAKnot ? 4 : 2;
    if (n < min_knots)
        throw NumericError("spline: need at least " + std::to_string(min_knots) + " knots, got " +
                           std::to_string(n));
    for (std::size_t i = 1; i < n; ++i) {
        if (!(x_[i] > x_[i - 1]))
            throw NumericError("spline: knots must be strictly increasing");
    }

    m_.assign(n, 0.0);
    if (n == 2)
        return; // linear segment, both second derivatives zero

    std::vector<double> h(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        h[i] = x_[i + 1] - x_[i];

    // Interior continuity equations in the knot second derivatives M:
    //   h[i-1]/6 M[i-1] + (h[i-1]+h[i])/3 M[i] + h[i]/6 M[i+1] = d[i]
    const std::size_t m = n - 2; // unknowns M[1..n-2]
    std::vector<double> lower(m, 0.0), diag(m, 0.0), upper(m, 0.0), rhs(m, 0.0);
    for (std::size_t i = 1; i + 1 <= n - 1; ++i) {
        const std::size_t r = i - 1;
        lower[r] = h[i - 1] / 6.0;
        diag[r] = (h[i - 1] + h[i]) / 3.0;
        upper[r] = h[i] / 6.0;
        rhs[r] = (y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1];
    }

    if (boundary == SplineBoundary::NotAKnot) {
        // M[0] and M[n-1] are eliminated via third-derivative continuity at the
        // second and penultimate knots:
        //   M[0]   = (1 + h0/h1) M[1]     - (h0/h1) M[2]
        //   M[n-1] = (1 + hL/hK) M[n-2]   - (hL/hK) M[n-3],  hL = h[n-2], hK = h[n-3]
        const double r0 = h[0] / h[1];
        diag[0] += lower[0] * (1.0 + r0);
        upper[0] -= lower[0] * r0;
        lower[0] = 0.0;

        const double r1 = h[n - 2] / h[n - 3];
        diag[m - 1] += upper[m - 1] * (1.0 + r1);
        lower[m - 1] -= upper[m - 1] * r1;
        upper[m - 1] = 0.0;
    } else {
        lower[0] = 0.0;     // M[0] = 0
        upper[m - 1] = 0.0; // M[n-1] = 0
    }

    const std::vector<double> sol = solve_tridiagonal(lower, diag, upper, rhs);
    for (std::size_t i = 0; i < m; ++i)
        m_[i + 1] = sol[i];

    if (boundary == SplineBoundary::NotAKnot) {
        const double r0 = h[0] / h[1];
        m_[0] = (1.0 + r0) * m_[1] - r0 * m_[2];
        const double r1 = h[n - 2] / h[n - 3];
        m_[n - 1] = (1.0 + r1) * m_[n - 2] - r1 * m_[n - 3];
    }
}

double CubicSpline::operator()(double x) const
{
    if (x < x_.front() || x > x_.back())
        throw NumericError("spline: evaluation point outside knot range");
    // locate the interval [x_[i], x_[i+1]]
    std::size_t i = std::upper_bound(x_.begin(), x_.end(), x) - x_.begin();
    if (i > 0)
        --i;
    if (i + 1 >= x_.size())
        i = x_.size() - 2;

    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h;
    const double b = (x - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * (h * h) / 6.0;
}

} // namespace windkit
