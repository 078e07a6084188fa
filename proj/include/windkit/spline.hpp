#pragma once

#include <vector>

namespace windkit {

enum class SplineBoundary {
    NotAKnot, // third derivative continuous across the second and penultimate knots;
              // reproduces cubic polynomials exactly
    Natural   // zero second derivative at both ends
};

/// Interpolating cubic spline over strictly increasing knots. Evaluation
/// outside the knot range throws NumericError; the toolkit never
/// extrapolates silently.
class CubicSpline {
public:
    /// Requires xs strictly increasing and xs.size() == ys.size();
    /// at least 2 knots for Natural, 4 for NotAKnot.
    CubicSpline(std::vector<double> xs, std::vector<double> ys,
                SplineBoundary boundary = SplineBoundary::NotAKnot);

    double operator()(double x) const;

    double min_x() const { return x_.front(); }
    double max_x() const { return x_.back(); }

private:
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> m_; // second derivatives at the knots
};

} // namespace windkit
