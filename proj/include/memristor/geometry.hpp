#pragma once

#include <span>
#include <vector>

namespace memristor {

/// Signed polygon area (counter-clockwise positive) of the closed polygon
/// through (x[k], y[k]). Coordinates are taken relative to the first vertex,
/// so large common offsets do not cost precision.
double shoelace_area(std::span<const double> x, std::span<const double> y);

/// Cumulative trapezoidal integral of uniformly sampled y, starting at y0.
std::vector<double> cumulative_trapezoid(std::span<const double> y, double dt, double y0);

struct AffineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_abs_residual = 0.0;
    /// max |residual| divided by the span of y; 0 when y is constant.
    double normalized_residual = 0.0;
};

/// Least-squares y = slope * x + intercept. Requires at least two points with
/// distinct x.
AffineFit fit_affine(std::span<const double> x, std::span<const double> y);

/// Linear interpolation of (xs, ys) at x; xs must be strictly increasing.
/// Returns false when x is outside [xs.front(), xs.back()].
bool interpolate(std::span<const double> xs, std::span<const double> ys, double x, double& out);

}  // namespace memristor
