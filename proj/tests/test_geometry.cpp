#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "memristor/error.hpp"
#include "memristor/geometry.hpp"

using namespace memristor;

namespace {

// Fan triangulation from the centroid-free origin, summed with compensated
// accumulation. Independent of the production formula's vertex shift.
double triangulation_area(const std::vector<double>& x, const std::vector<double>& y) {
    long double sum = 0.0L;
    const std::size_t n = x.size();
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const long double ax = x[k] - x[0], ay = y[k] - y[0];
        const long double bx = x[k + 1] - x[0], by = y[k + 1] - y[0];
        sum += 0.5L * (ax * by - ay * bx);
    }
    return static_cast<double>(sum);
}

}  // namespace

TEST_CASE("unit square has area one with orientation sign") {
    const std::vector<double> x{0, 1, 1, 0}, y{0, 0, 1, 1};
    CHECK(shoelace_area(x, y) == doctest::Approx(1.0));
    const std::vector<double> xr{0, 0, 1, 1}, yr{0, 1, 1, 0};
    CHECK(shoelace_area(xr, yr) == doctest::Approx(-1.0));
}

TEST_CASE("degenerate polygons have zero area") {
    const std::vector<double> x{0, 1, 2, 3}, y{0, 1, 2, 3};
    CHECK(shoelace_area(x, y) == 0.0);
    const std::vector<double> one{5.0};
    CHECK(shoelace_area(one, one) == 0.0);
}

TEST_CASE("shoelace matches a triangulation oracle on random polygons") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> r(0.5, 1.5);
    std::uniform_real_distribution<double> off(-1e3, 1e3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 3 + static_cast<std::size_t>(trial * 20);
        std::vector<double> x(n), y(n);
        const double cx = off(rng), cy = off(rng);
        for (std::size_t k = 0; k < n; ++k) {
            // Star-shaped polygon: simple, arbitrary radius per vertex.
            const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
            const double rad = r(rng);
            x[k] = cx + rad * std::cos(a);
            y[k] = cy + rad * std::sin(a);
        }
        const double oracle = triangulation_area(x, y);
        CHECK(shoelace_area(x, y) == doctest::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("area is invariant to translation") {
    const std::vector<double> x{0, 2, 2, 0}, y{0, 0, 3, 3};
    std::vector<double> xs(x), ys(y);
    for (auto& v : xs) v += 1e6;
    for (auto& v : ys) v -= 7e5;
    CHECK(shoelace_area(xs, ys) == doctest::Approx(shoelace_area(x, y)).epsilon(1e-12));
}

TEST_CASE("cumulative trapezoid integrates a line exactly") {
    std::vector<double> y(11);
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = 2.0 * static_cast<double>(k) * 0.1;
    const auto c = cumulative_trapezoid(y, 0.1, 5.0);
    REQUIRE(c.size() == y.size());
    CHECK(c[0] == 5.0);
    for (std::size_t k = 0; k < y.size(); ++k) {
        const double t = static_cast<double>(k) * 0.1;
        CHECK(c[k] == doctest::Approx(5.0 + t * t).epsilon(1e-12));
    }
}

TEST_CASE("affine fit recovers slope and intercept") {
    std::vector<double> x, y;
    for (int k = 0; k < 20; ++k) {
        x.push_back(k * 0.5);
        y.push_back(3.0 * k * 0.5 - 1.0);
    }
    const AffineFit f = fit_affine(x, y);
    CHECK(f.slope == doctest::Approx(3.0));
    CHECK(f.intercept == doctest::Approx(-1.0));
    CHECK(f.normalized_residual < 1e-12);

    y[10] += 1.0;
    CHECK(fit_affine(x, y).normalized_residual > 1e-3);
}

TEST_CASE("affine fit input validation") {
    const std::vector<double> one{1.0};
    CHECK_THROWS_AS(fit_affine(one, one), InputError);
    const std::vector<double> same{2.0, 2.0, 2.0}, y{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(fit_affine(same, y), InputError);
}

TEST_CASE("interpolation inside and outside the table") {
    const std::vector<double> xs{0.0, 1.0, 3.0}, ys{0.0, 2.0, 0.0};
    double out = 0.0;
    CHECK(interpolate(xs, ys, 0.5, out));
    CHECK(out == doctest::Approx(1.0));
    CHECK(interpolate(xs, ys, 2.0, out));
    CHECK(out == doctest::Approx(1.0));
    CHECK_FALSE(interpolate(xs, ys, 3.5, out));
}
