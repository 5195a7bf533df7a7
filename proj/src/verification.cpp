#include "hypflow/verification.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>

#include "hypflow/diagnostics.hpp"
#include "hypflow/geometry.hpp"
#include "hypflow/hyperbolic.hpp"
#include "hypflow/kernels.hpp"
#include "hypflow/oracle.hpp"
#include "hypflow/spectral.hpp"

namespace hypflow::verify {

RadialCurve random_convex_curve(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double mean = 0.3 + 2.2 * u01(rng);
    std::array<double, 8> amp{}, phase{};
    for (int k = 1; k <= 8; ++k) {
        amp[static_cast<std::size_t>(k - 1)] =
            (2.0 * u01(rng) - 1.0) * 0.35 * mean * std::exp(-0.7 * static_cast<double>(k));
        phase[static_cast<std::size_t>(k - 1)] = two_pi * u01(rng);
    }
    std::vector<double> rho(static_cast<std::size_t>(n));
    for (int shrink = 0; shrink < 60; ++shrink) {
        const double scale = std::pow(0.6, static_cast<double>(shrink));
        bool positive = true;
        for (int j = 0; j < n; ++j) {
            double r = mean;
            const double theta = two_pi * static_cast<double>(j) / static_cast<double>(n);
            for (int k = 1; k <= 8; ++k)
                r += scale * amp[static_cast<std::size_t>(k - 1)] *
                     std::cos(static_cast<double>(k) * theta + phase[static_cast<std::size_t>(k - 1)]);
            if (r <= 0.05) positive = false;
            rho[static_cast<std::size_t>(j)] = r;
        }
        if (!positive) continue;
        RadialCurve candidate = RadialCurve::from_samples(rho);
        const std::vector<double> kappa = curvature_profile(candidate, kernels::Exec::Serial);
        if (*std::min_element(kappa.begin(), kappa.end()) > 0.02) return candidate;
    }
    return oracle::circle_radial_function({mean, 0.0}, n);
}

std::vector<double> curvature_rate_evolution_identity(const FlowState& state,
                                                      const FlowConfig& config) {
    const std::vector<double>& rho = state.curve.rho;
    const std::size_t n = rho.size();
    const std::vector<double> q = spectral::derivative(rho, 1);
    std::vector<double> g, ka;
    kernels::arc_element(rho, q, g, kernels::Exec::Serial);
    kernels::power(state.kappa, config.alpha, ka, kernels::Exec::Serial);

    const std::vector<double> dka = spectral::derivative(ka, 1);
    std::vector<double> ka_s(n);
    for (std::size_t j = 0; j < n; ++j) ka_s[j] = dka[j] / g[j];
    const std::vector<double> dka_s = spectral::derivative(ka_s, 1);

    const std::vector<double> dk = spectral::derivative(state.kappa, 1);

    std::vector<double> rate(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double ka_ss = dka_s[j] / g[j];
        const double k = state.kappa[j];
        const double tau = (ka[j] - state.phi) * q[j] / std::sinh(rho[j]);
        const double k_s = dk[j] / g[j];
        rate[j] = -ka_ss + (k * k - 1.0) * (state.phi - ka[j]) + tau * k_s;
    }
    return rate;
}

std::vector<double> curvature_rate_chain_rule(const FlowState& state, const FlowConfig& config) {
    const std::vector<double>& rho = state.curve.rho;
    const std::size_t n = rho.size();
    const std::vector<double> q = spectral::derivative(rho, 1);
    const std::vector<double> s = spectral::derivative(rho, 2);
    const std::vector<double> v = rhs(state.curve, config.alpha, config.mode, config.exec);
    const std::vector<double> dv = spectral::derivative(v, 1);
    const std::vector<double> d2v = spectral::derivative(v, 2);

    std::vector<double> rate(n);
    for (std::size_t j = 0; j < n; ++j) {
        const SinhCosh hc = sinh_cosh(rho[j]);
        const double sh = hc.sh, ch = hc.ch;
        const double m = sh * sh + q[j] * q[j];
        const double big_n = sh * sh * ch + 2.0 * q[j] * q[j] * ch - s[j] * sh;
        const double m32 = m * std::sqrt(m);
        const double dn_dp = 2.0 * sh * ch * ch + sh * sh * sh + 2.0 * q[j] * q[j] * sh - s[j] * ch;
        const double dk_dp = (dn_dp - 3.0 * big_n * sh * ch / m) / m32;
        const double dk_dq = (4.0 * q[j] * ch - 3.0 * big_n * q[j] / m) / m32;
        const double dk_ds = -sh / m32;
        rate[j] = dk_dp * v[j] + dk_dq * dv[j] + dk_ds * d2v[j];
    }
    return rate;
}

namespace {

double probe_dt(const FlowState& state, const FlowConfig& config) {
    const std::vector<double> d = diffusion_coefficient(state.curve, config.alpha, config.exec);
    double dmax = 0.0;
    for (double x : d) dmax = std::max(dmax, x);
    const double h = two_pi / static_cast<double>(state.curve.n());
    return 0.1 * config.cfl_safety * h * h / dmax;
}

}  // namespace

double curvature_evolution_mismatch(const FlowState& state, const FlowConfig& config) {
    const std::vector<double> analytic = curvature_rate_evolution_identity(state, config);
    const double dt = probe_dt(state, config);
    const StepResult s1 = step(state, config, dt);
    const StepResult s2 = step(s1.state, config, dt);
    if (!s1.advanced || !s2.advanced)
        throw std::domain_error("evolution mismatch: probe steps left the convex regime");
    double num = 0.0, den = 1e-6;
    for (std::size_t j = 0; j < analytic.size(); ++j) {
        const double fd = (-3.0 * state.kappa[j] + 4.0 * s1.state.kappa[j] - s2.state.kappa[j]) /
                          (2.0 * dt);
        num = std::max(num, std::abs(fd - analytic[j]));
        den = std::max(den, std::abs(analytic[j]));
    }
    return num / den;
}

double length_rate_mismatch(const FlowState& state, const FlowConfig& config) {
    const std::vector<double>& rho = state.curve.rho;
    const std::size_t n = rho.size();
    const std::vector<double> q = spectral::derivative(rho, 1);
    std::vector<double> g, ka;
    kernels::arc_element(rho, q, g, kernels::Exec::Serial);
    kernels::power(state.kappa, config.alpha, ka, kernels::Exec::Serial);
    const double h = two_pi / static_cast<double>(n);
    double analytic = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        analytic -= h * state.kappa[j] * (state.phi - ka[j]) * g[j];

    const double dt = probe_dt(state, config);
    const StepResult s1 = step(state, config, dt);
    const StepResult s2 = step(s1.state, config, dt);
    const double fd = (-3.0 * length(state.curve) + 4.0 * length(s1.state.curve) -
                       length(s2.state.curve)) /
                      (2.0 * dt);
    return std::abs(fd - analytic) / std::max(std::abs(analytic), 1e-6);
}

double area_rate_mismatch(const FlowState& state, const FlowConfig& config) {
    const std::vector<double>& rho = state.curve.rho;
    const std::size_t n = rho.size();
    const std::vector<double> q = spectral::derivative(rho, 1);
    std::vector<double> g, ka;
    kernels::arc_element(rho, q, g, kernels::Exec::Serial);
    kernels::power(state.kappa, config.alpha, ka, kernels::Exec::Serial);
    const double h = two_pi / static_cast<double>(n);
    double analytic = 0.0;
    for (std::size_t j = 0; j < n; ++j) analytic -= h * (state.phi - ka[j]) * g[j];

    const double dt = probe_dt(state, config);
    const StepResult s1 = step(state, config, dt);
    const StepResult s2 = step(s1.state, config, dt);
    const double fd =
        (-3.0 * area(state.curve) + 4.0 * area(s1.state.curve) - area(s2.state.curve)) / (2.0 * dt);
    return std::abs(fd - analytic) / std::max(std::abs(analytic), 1e-6);
}

namespace {

RadialCurve steep_example(int n) {
    std::vector<double> rho(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        rho[static_cast<std::size_t>(j)] =
            2.0 + std::cos(two_pi * static_cast<double>(j) / static_cast<double>(n));
    return RadialCurve::from_samples(std::move(rho));
}

}  // namespace

bool run_verification_suite(std::ostream& os) {
    bool all = true;
    const auto report = [&](const char* name, bool pass, double value) {
        os << "  " << (pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(44) << name
           << std::scientific << std::setprecision(3) << value << "\n";
        all = all && pass;
    };
    os << "quick verification suite (fixed seeds)\n";

    {
        double worst = 0.0;
        for (double alpha : {-0.5, -1.0, -2.0})
            for (Mode mode : {Mode::AreaPreserving, Mode::LengthPreserving})
                worst = std::max(worst, oracle::stationary_residual(1.0, alpha, mode, 128));
        report("circle stationarity residual", worst < 1e-12, worst);
    }

    for (Mode mode : {Mode::AreaPreserving, Mode::LengthPreserving}) {
        FlowConfig config;
        config.mode = mode;
        config.n = 128;
        config.t_end = 1.0;
        const RunOutcome outcome = run(config, steep_example(config.n));
        const bool area_mode = mode == Mode::AreaPreserving;
        const auto get = area_mode ? +[](const diag::DiagnosticsRow& r) { return r.area; }
                                   : +[](const diag::DiagnosticsRow& r) { return r.length; };
        const double q0 = get(outcome.series.rows.front());
        double drift = 0.0;
        for (const auto& row : outcome.series.rows)
            drift = std::max(drift, std::abs(get(row) - q0) / q0);
        report(area_mode ? "area-mode conserved-area drift" : "length-mode conserved-length drift",
               drift < 1e-9, drift);
        const diag::MonotonicityReport rep = diag::monotonicity_report(outcome.series, mode);
        report(area_mode ? "area-mode monotone deficit/length" : "length-mode monotone deficit/area",
               rep.all_pass(), std::max(rep.deficit.max_violation,
                                        (area_mode ? rep.length : rep.area).max_violation));
    }

    {
        std::mt19937 rng(42);
        double worst_gb = 0.0, worst_cheb = 0.0;
        for (int i = 0; i < 25; ++i) {
            const RadialCurve curve = random_convex_curve(rng, 128);
            const GeometricSummary s = summarize(curve, kernels::Exec::Serial);
            worst_gb = std::max(worst_gb,
                                std::abs(gauss_bonnet_residual(s)) / (two_pi + s.area));
            for (double alpha : {-0.5, -1.0, -2.0}) {
                const double gap = chebyshev_gap(curve, alpha, kernels::Exec::Serial);
                const double scale = std::max(1.0, s.length * s.length);
                worst_cheb = std::min(worst_cheb, gap / scale);
            }
        }
        report("gauss-bonnet residual (25 random curves)", worst_gb < 1e-8, worst_gb);
        report("chebyshev gap nonnegative (same curves)", worst_cheb >= -1e-12, worst_cheb);
    }

    {
        FlowConfig config;
        config.n = 128;
        config.t_end = 3.0;
        std::vector<double> rho(static_cast<std::size_t>(config.n));
        for (int j = 0; j < config.n; ++j)
            rho[static_cast<std::size_t>(j)] =
                1.0 + 1e-3 * std::cos(2.0 * two_pi * static_cast<double>(j) /
                                      static_cast<double>(config.n));
        const RunOutcome outcome = run(config, RadialCurve::from_samples(std::move(rho)));
        const double rho_inf =
            diag::limit_radius(config.mode, outcome.series.rows.front().area);
        const diag::LinearizedModel model = diag::linear_model(config.alpha, rho_inf);
        const diag::FitResult fit = diag::fit_decay_rate(outcome.series, 2, 0.2, 2.5);
        const double rel = std::abs(fit.rate - model.lambda(2)) / model.lambda(2);
        report("mode-2 decay rate vs linearization", rel < 0.05 && fit.r_squared > 0.999, rel);
    }

    {
        FlowConfig config;
        config.n = 128;
        const FlowState state = make_state(config, steep_example(config.n));
        const double mismatch = curvature_evolution_mismatch(state, config);
        report("curvature evolution identity", mismatch < 1e-3, mismatch);
        const std::vector<double> a = curvature_rate_evolution_identity(state, config);
        const std::vector<double> b = curvature_rate_chain_rule(state, config);
        double num = 0.0, den = 1e-6;
        for (std::size_t j = 0; j < a.size(); ++j) {
            num = std::max(num, std::abs(a[j] - b[j]));
            den = std::max(den, std::abs(a[j]));
        }
        report("evolution identity vs chain rule", num / den < 1e-7, num / den);
        report("length rate identity", length_rate_mismatch(state, config) < 1e-3,
               length_rate_mismatch(state, config));
    }

    os << (all ? "all checks passed\n" : "FAILURES present\n");
    return all;
}

}  // namespace hypflow::verify
