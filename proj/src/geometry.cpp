#include "memristor/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "memristor/error.hpp"

namespace memristor {

double shoelace_area(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = std::min(x.size(), y.size());
    if (n < 3) return 0.0;
    const double x0 = x[0];
    const double y0 = y[0];
    double twice = 0.0;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        twice += (x[k] - x0) * (y[k + 1] - y0) - (x[k + 1] - x0) * (y[k] - y0);
    }
    return 0.5 * twice;
}

std::vector<double> cumulative_trapezoid(std::span<const double> y, double dt, double y0) {
    std::vector<double> out(y.size());
    if (y.empty()) return out;
    out[0] = y0;
    // Running sum without the offset keeps the increments exact for shifted starts.
    double acc = 0.0;
    for (std::size_t k = 1; k < y.size(); ++k) {
        acc += 0.5 * (y[k] + y[k - 1]) * dt;
        out[k] = y0 + acc;
    }
    return out;
}

AffineFit fit_affine(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = std::min(x.size(), y.size());
    if (n < 2) throw InputError("affine fit needs at least two points");
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        mx += x[k];
        my += y[k];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
    }
    if (!(sxx > 0.0)) throw InputError("affine fit needs distinct abscissae");

    AffineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ymin = y[0], ymax = y[0];
    for (std::size_t k = 0; k < n; ++k) {
        const double r = (y[k] - my) - fit.slope * (x[k] - mx);
        fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(r));
        ymin = std::min(ymin, y[k]);
        ymax = std::max(ymax, y[k]);
    }
    const double span = ymax - ymin;
    fit.normalized_residual = span > 0.0 ? fit.max_abs_residual / span : 0.0;
    return fit;
}

bool interpolate(std::span<const double> xs, std::span<const double> ys, double x, double& out) {
    if (xs.empty() || x < xs.front() || x > xs.back()) return false;
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    if (hi == 0) {
        out = ys[0];
        return true;
    }
    const std::size_t lo = hi - 1;
    const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
    out = ys[lo] + w * (ys[hi] - ys[lo]);
    return true;
}

}  // namespace memristor
