#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "hypflow/geometry.hpp"
#include "hypflow/hyperbolic.hpp"
#include "hypflow/oracle.hpp"

using namespace hypflow;

namespace {

RadialCurve example_curve(int n) {
    std::vector<double> rho(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) rho[static_cast<std::size_t>(j)] = 2.0 + std::cos(two_pi * j / n);
    return RadialCurve::from_samples(std::move(rho));
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

}  // namespace

TEST_CASE("centered circle radial function is constant") {
    auto c = oracle::circle_radial_function({.radius = 1.7, .center_offset = 0.0}, 64);
    for (double r : c.rho) CHECK(r == doctest::Approx(1.7).epsilon(1e-14));
}

TEST_CASE("offset circle hits the collinear radii and the closed-form geometry") {
    const double r = 1.0, d = 0.3;
    const int n = 128;
    auto c = oracle::circle_radial_function({.radius = r, .center_offset = d}, n);
    // theta = 0 points at the center, theta = pi away from it.
    CHECK(c.rho[0] == doctest::Approx(r + d).epsilon(1e-13));
    CHECK(c.rho[n / 2] == doctest::Approx(r - d).epsilon(1e-13));
    // Law of cosines holds at every sample.
    for (int j = 0; j < n; ++j) {
        const double rho = c.rho[static_cast<std::size_t>(j)];
        const double lhs = std::cosh(d) * std::cosh(rho) -
                           std::sinh(d) * std::sinh(rho) * std::cos(two_pi * j / n);
        CHECK(lhs == doctest::Approx(std::cosh(r)).epsilon(1e-13));
    }
    // Isometry invariance: same circle, so the centered closed forms apply.
    auto s = summarize(c);
    CHECK(s.length == doctest::Approx(circle_length(r)).epsilon(1e-10));
    CHECK(s.area == doctest::Approx(circle_area(r)).epsilon(1e-10));
    CHECK(s.kappa_min == doctest::Approx(circle_curvature(r)).epsilon(1e-10));
    CHECK(s.kappa_max == doctest::Approx(circle_curvature(r)).epsilon(1e-10));
}

TEST_CASE("circle spec invariants are enforced") {
    CHECK_THROWS_AS(oracle::circle_radial_function({.radius = 0.0, .center_offset = 0.0}, 64),
                    std::invalid_argument);
    CHECK_THROWS_AS(oracle::circle_radial_function({.radius = 1.0, .center_offset = 1.0}, 64),
                    std::invalid_argument);
    CHECK_THROWS_AS(oracle::circle_radial_function({.radius = 1.0, .center_offset = -0.1}, 64),
                    std::invalid_argument);
}

TEST_CASE("circles are stationary for the flow in every tested regime") {
    CHECK(oracle::stationary_residual(1.0, -1.0, Mode::AreaPreserving, 128) < 1e-12);
    CHECK(oracle::stationary_residual(2.23, -1.0, Mode::LengthPreserving, 128) < 1e-12);
    CHECK(oracle::stationary_residual(0.1, -0.5, Mode::AreaPreserving, 128) < 1e-12);
    CHECK(oracle::stationary_residual(1.0, -2.0, Mode::LengthPreserving, 256) < 1e-12);
}

TEST_CASE("linearized evolution decays modes k >= 2 and freezes the rest") {
    auto model = diag::linear_model(-1.0, 1.0);
    std::map<int, double> amps{{0, 2.0}, {1, 0.5}, {2, 1.0}, {3, 0.25}};
    auto out = oracle::linearized_evolution(amps, model, 1.0);
    CHECK(out[0] == 2.0);
    CHECK(out[1] == 0.5);
    CHECK(out[2] == doctest::Approx(std::exp(-model.lambda(2))).epsilon(1e-15));
    CHECK(out[2] == doctest::Approx(0.28367586165362674).epsilon(1e-13));
    CHECK(out[3] == doctest::Approx(0.25 * std::exp(-model.lambda(3))).epsilon(1e-15));
    CHECK(oracle::linearized_evolution({}, model, 5.0).empty());
    // t = 0 is the identity.
    auto same = oracle::linearized_evolution(amps, model, 0.0);
    for (const auto& [k, a] : amps) CHECK(same[k] == a);
}

TEST_CASE("finite-difference curvature is exact on circles") {
    auto c = oracle::circle_radial_function({.radius = 1.0, .center_offset = 0.0}, 64);
    auto kappa = oracle::fd_curvature(c);
    for (double k : kappa) CHECK(k == doctest::Approx(circle_curvature(1.0)).epsilon(1e-13));
}

TEST_CASE("finite-difference curvature converges at second order") {
    // Error against the spectral profile shrinks by ~4 per grid doubling.
    auto err = [](int n) {
        auto c = example_curve(n);
        return max_abs_diff(oracle::fd_curvature(c), curvature_profile(c));
    };
    const double e64 = err(64), e128 = err(128), e256 = err(256);
    CHECK(e64 / e128 == doctest::Approx(4.0).epsilon(0.15));
    CHECK(e128 / e256 == doctest::Approx(4.0).epsilon(0.15));
    CHECK(e256 < 1e-4);
}

TEST_CASE("dense extremum search brackets the sampled range") {
    auto c = example_curve(128);
    auto kappa = curvature_profile(c);
    double grid_min = kappa[0], grid_max = kappa[0];
    for (double k : kappa) {
        grid_min = std::min(grid_min, k);
        grid_max = std::max(grid_max, k);
    }
    const double dense_min = oracle::dense_curvature_extremum(c, 64, false);
    const double dense_max = oracle::dense_curvature_extremum(c, 64, true);
    CHECK(dense_min <= grid_min);
    CHECK(dense_max >= grid_max);
    CHECK(oracle::dense_curvature_extremum(c, 1, true) == doctest::Approx(grid_max).epsilon(1e-14));
    CHECK_THROWS_AS(oracle::dense_curvature_extremum(c, 3, true), std::invalid_argument);
    // Circles: both extrema are the constant curvature.
    auto circ = oracle::circle_radial_function({.radius = 2.0, .center_offset = 0.0}, 64);
    CHECK(oracle::dense_curvature_extremum(circ, 16, false) == doctest::Approx(circle_curvature(2.0)).epsilon(1e-12));
    CHECK(oracle::dense_curvature_extremum(circ, 16, true) == doctest::Approx(circle_curvature(2.0)).epsilon(1e-12));
}

TEST_CASE("bessel series matches reference values") {
    CHECK(oracle::bessel_I0(0.0) == 1.0);
    CHECK(oracle::bessel_I0(1.0) == doctest::Approx(1.2660658777520084).epsilon(1e-15));
    CHECK(oracle::bessel_I0(2.0) == doctest::Approx(2.2795853023360673).epsilon(1e-14));
    CHECK(oracle::bessel_I0(-1.0) == doctest::Approx(oracle::bessel_I0(1.0)).epsilon(1e-15));
}

TEST_CASE("adaptive quadrature hits known integrals") {
    const double s = oracle::simpson_integral([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-12);
    CHECK(s == doctest::Approx(2.0).epsilon(1e-12));
    const double p = oracle::simpson_integral([](double x) { return x * x; }, 0.0, 1.0, 1e-13);
    CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    const double e = oracle::simpson_integral([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-12);
    CHECK(e == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
}
