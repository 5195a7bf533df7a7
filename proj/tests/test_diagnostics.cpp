#include <doctest.h>

#include <cmath>
#include <vector>

#include "hypflow/diagnostics.hpp"
#include "hypflow/flow.hpp"
#include "hypflow/geometry.hpp"
#include "hypflow/hyperbolic.hpp"

using namespace hypflow;

namespace {

RadialCurve constant_curve(int n, double r) {
    return RadialCurve::from_samples(std::vector<double>(static_cast<std::size_t>(n), r));
}

RadialCurve example_curve(int n) {
    std::vector<double> rho(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) rho[static_cast<std::size_t>(j)] = 2.0 + std::cos(two_pi * j / n);
    return RadialCurve::from_samples(std::move(rho));
}

// Synthetic series with one exponentially decaying tracked mode.
diag::DiagnosticsSeries synthetic_series(double rate, int rows, double dt) {
    diag::DiagnosticsSeries s;
    s.k_max = 3;
    for (int i = 0; i < rows; ++i) {
        diag::DiagnosticsRow row;
        row.t = i * dt;
        row.length = 10.0;
        row.area = 5.0;
        row.deficit = std::exp(-2.0 * rate * row.t);
        row.modes = {1.0, 0.0, std::exp(-rate * row.t), 0.0};
        s.rows.push_back(row);
    }
    return s;
}

}  // namespace

TEST_CASE("fourier modes of the canonical shapes") {
    auto amps = diag::fourier_modes(example_curve(128), 4);
    REQUIRE(amps.size() == 5);
    CHECK(amps[0] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(amps[1] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(amps[2] < 1e-13);
    auto flat = diag::fourier_modes(constant_curve(64, 1.0), 2);
    CHECK(flat[0] == doctest::Approx(1.0));
    CHECK(flat[1] == 0.0);
    CHECK(flat[2] == 0.0);
}

TEST_CASE("limit radius inverts the circle quantities") {
    CHECK(diag::limit_radius(Mode::AreaPreserving, circle_area(1.0)) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(diag::limit_radius(Mode::LengthPreserving, circle_length(1.0)) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(diag::limit_radius(Mode::AreaPreserving, circle_area(2.7)) == doctest::Approx(2.7).epsilon(1e-13));
    // Conserved quantities of the canonical initial curve.
    CHECK(diag::limit_radius(Mode::AreaPreserving, 23.644804973061863) ==
          doctest::Approx(2.2428585015530773).epsilon(1e-13));
    CHECK(diag::limit_radius(Mode::LengthPreserving, 29.34116517155331) ==
          doctest::Approx(2.2455335656961073).epsilon(1e-13));
    CHECK_THROWS_AS(diag::limit_radius(Mode::AreaPreserving, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(diag::limit_radius(Mode::LengthPreserving, -1.0), std::invalid_argument);
}

TEST_CASE("linearized model spectrum") {
    auto m = diag::linear_model(-1.0, 1.0);
    CHECK(m.c < 0.0);
    CHECK(m.c == doctest::Approx(-0.41997434161402608).epsilon(1e-14));
    CHECK(m.lambda(1) == 0.0);
    CHECK(m.lambda(2) == doctest::Approx(1.2599230248420783).epsilon(1e-14));
    CHECK(m.lambda(3) == doctest::Approx(8.0 * 0.41997434161402608).epsilon(1e-13));
    // Spacing identity lambda(k+1) - lambda(k) = -c (2k+1), exact arithmetic.
    for (int k = 1; k <= 6; ++k)
        CHECK(m.lambda(k + 1) - m.lambda(k) == doctest::Approx(-m.c * (2 * k + 1)).epsilon(1e-14));
    // alpha = -1 makes the tanh power drop out; other alphas keep it.
    auto m2 = diag::linear_model(-2.0, 1.0);
    CHECK(m2.c == doctest::Approx(-2.0 * std::tanh(1.0) / (std::cosh(1.0) * std::cosh(1.0))).epsilon(1e-14));
    auto m3 = diag::linear_model(-0.5, 2.0);
    CHECK(m3.c == doctest::Approx(-0.5 * std::pow(std::tanh(2.0), -0.5) / (std::cosh(2.0) * std::cosh(2.0))).epsilon(1e-14));
    CHECK(diag::linear_model(-1.0, 2.2455335656961073).lambda(2) > 0.0);
    CHECK_THROWS_AS(diag::linear_model(0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(diag::linear_model(-1.0, 0.0), std::invalid_argument);
}

TEST_CASE("decay-rate fitting recovers an exact exponential") {
    auto s = synthetic_series(3.0, 201, 0.01);
    auto fit = diag::fit_decay_rate(s, 2, 0.0, 2.0);
    CHECK(fit.rate == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(fit.r_squared > 1.0 - 1e-12);
}

TEST_CASE("decay-rate fitting rejects unusable windows") {
    auto s = synthetic_series(3.0, 201, 0.01);
    // Too few samples in the window.
    CHECK_THROWS_AS(diag::fit_decay_rate(s, 2, 0.0, 0.05), std::invalid_argument);
    // Mode 1 is identically zero: noise floor.
    CHECK_THROWS_AS(diag::fit_decay_rate(s, 1, 0.0, 2.0), std::invalid_argument);
    // Mode 0 is constant: not decreasing.
    CHECK_THROWS_AS(diag::fit_decay_rate(s, 0, 0.0, 2.0), std::invalid_argument);
    // Mode index outside the recorded range.
    CHECK_THROWS_AS(diag::fit_decay_rate(s, 9, 0.0, 2.0), std::invalid_argument);
    // Amplitudes below the noise floor anywhere in the window.
    auto tiny = synthetic_series(3.0, 201, 0.01);
    for (auto& row : tiny.rows) row.modes[2] *= 1e-14;
    CHECK_THROWS_AS(diag::fit_decay_rate(tiny, 2, 0.0, 2.0), std::invalid_argument);
}

TEST_CASE("monotonicity report accepts clean series and localizes corruption") {
    auto s = synthetic_series(3.0, 101, 0.01);
    auto clean = diag::monotonicity_report(s, Mode::AreaPreserving);
    CHECK(clean.all_pass());
    CHECK(clean.deficit.max_violation == 0.0);

    auto corrupted = s;
    corrupted.rows[40].deficit = corrupted.rows[39].deficit + 0.5;
    auto rep = diag::monotonicity_report(corrupted, Mode::AreaPreserving);
    CHECK_FALSE(rep.deficit.pass);
    CHECK(rep.deficit.worst_row == 40);
    CHECK(rep.deficit.max_violation == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(rep.length.pass);

    // Length must not increase in area mode.
    auto grew = s;
    grew.rows[10].length = 10.5;
    CHECK_FALSE(diag::monotonicity_report(grew, Mode::AreaPreserving).length.pass);
    // ...but a length *decrease* violates constancy in length mode.
    auto shrunk = s;
    shrunk.rows[10].length = 9.0;
    CHECK_FALSE(diag::monotonicity_report(shrunk, Mode::LengthPreserving).length.pass);
    CHECK(diag::monotonicity_report(grew, Mode::LengthPreserving).area.pass);
    // Area shrinking violates length mode's non-decreasing verdict.
    auto area_drop = s;
    area_drop.rows[20].area = 4.0;
    CHECK_FALSE(diag::monotonicity_report(area_drop, Mode::LengthPreserving).area.pass);
    CHECK_FALSE(diag::monotonicity_report(area_drop, Mode::AreaPreserving).area.pass);  // constancy
}

TEST_CASE("eta measure reduces to the sign condition when curvature is large") {
    // kappa close to coth(1) > sqrt(2/3) everywhere, so only phi >= kappa^alpha matters.
    const int n = 128;
    std::vector<double> rho(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) rho[static_cast<std::size_t>(j)] = 1.0 + 0.1 * std::cos(two_pi * j / n);
    auto c = RadialCurve::from_samples(std::move(rho));
    auto kappa = curvature_profile(c);
    const double alpha = -1.0;
    const double phi = global_term(c, alpha, Mode::AreaPreserving);

    auto d = derivatives(c);
    double expect = 0.0;
    const double h = two_pi / n;
    for (int j = 0; j < n; ++j) {
        const double sh = std::sinh(c.rho[static_cast<std::size_t>(j)]);
        const double q = d.rho_theta[static_cast<std::size_t>(j)];
        if (phi >= pow_alpha(kappa[static_cast<std::size_t>(j)], alpha))
            expect += h * std::sqrt(q * q + sh * sh);
    }
    const double eta = diag::eta_measure(c, kappa, phi, alpha);
    CHECK(eta == doctest::Approx(expect).epsilon(1e-12));
    CHECK(eta > 0.0);
    CHECK(eta < length(c));

    // One-signed speed: phi below every kappa^alpha empties the set...
    CHECK(diag::eta_measure(c, kappa, 0.5, alpha) == 0.0);
    // ...and phi above every kappa^alpha (with kappa^2 > 2/3) captures the whole curve.
    CHECK(diag::eta_measure(c, kappa, 2.0, alpha) == doctest::Approx(length(c)).epsilon(1e-12));
}

TEST_CASE("sufficient-condition monitor on a circle reports faithfully") {
    FlowConfig cfg;
    cfg.n = 128;
    cfg.exec = kernels::Exec::Serial;
    auto state = make_state(cfg, constant_curve(128, 1.0));
    const double D = diag::limit_radius(Mode::AreaPreserving, circle_area(1.0));  // = 1
    auto rep = diag::sufficient_condition_monitor(state, cfg, D, circle_curvature(1.0));

    CHECK(rep.D == doctest::Approx(1.0).epsilon(1e-13));
    // min kappa(0) = coth(1) > 1, so the working lower bar saturates at 1.
    CHECK(rep.kappa_lower_bar == 1.0);
    CHECK(rep.b == doctest::Approx(D / 8.0).epsilon(1e-13));
    // V = tanh(1) everywhere; it never crosses D = 1.
    CHECK(rep.v_min == doctest::Approx(std::tanh(1.0)).epsilon(1e-12));
    CHECK_FALSE(rep.crossing_flag);
    CHECK(rep.v_min_above_quarter_d);  // tanh(1) > 1/4
}

TEST_CASE("sufficient-condition monitor on the canonical curve") {
    FlowConfig cfg;
    cfg.n = 256;
    cfg.exec = kernels::Exec::Serial;
    auto state = make_state(cfg, example_curve(256));
    auto s = summarize(state.curve);
    const double D = diag::limit_radius(Mode::AreaPreserving, s.area);
    auto rep = diag::sufficient_condition_monitor(state, cfg, D, s.kappa_min);

    CHECK(rep.kappa_lower_bar == doctest::Approx(0.58897362453170365).epsilon(1e-12));
    CHECK(rep.b == doctest::Approx(rep.kappa_lower_bar * rep.kappa_lower_bar * D / 8.0).epsilon(1e-13));
    // V ranges over about [0.92, 1.70] while D is 2.24: no crossing.
    double sample_kmax = state.kappa[0];
    for (double k : state.kappa) sample_kmax = std::max(sample_kmax, k);
    CHECK(rep.v_min == doctest::Approx(1.0 / sample_kmax).epsilon(1e-13));
    CHECK_FALSE(rep.crossing_flag);
    CHECK(rep.eta_measure >= 0.0);
    CHECK(rep.eta_measure < s.length);
    // A matching D inside the V range flips the crossing flag.
    auto rep2 = diag::sufficient_condition_monitor(state, cfg, 1.2, s.kappa_min);
    CHECK(rep2.crossing_flag);
}
