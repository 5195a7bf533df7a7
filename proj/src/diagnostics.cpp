#include "hypflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hypflow/flow.hpp"
#include "hypflow/geometry.hpp"
#include "hypflow/hyperbolic.hpp"
#include "hypflow/kernels.hpp"
#include "hypflow/spectral.hpp"

namespace hypflow::diag {

std::vector<double> fourier_modes(const RadialCurve& curve, int k_max) {
    return spectral::mode_amplitudes(curve.rho, k_max);
}

double limit_radius(Mode mode, double conserved_initial) {
    if (!(conserved_initial > 0.0))
        throw std::invalid_argument("limit_radius: conserved quantity must be positive");
    return mode == Mode::AreaPreserving ? std::acosh(conserved_initial / two_pi + 1.0)
                                        : std::asinh(conserved_initial / two_pi);
}

double eta_measure(const RadialCurve& curve, const std::vector<double>& kappa, double phi,
                   double alpha) {
    const Derivatives d = derivatives(curve);
    std::vector<double> g;
    kernels::arc_element(curve.rho, d.rho_theta, g, kernels::Exec::Serial);
    const double h = two_pi / static_cast<double>(curve.rho.size());
    double eta = 0.0;
    for (std::size_t j = 0; j < kappa.size(); ++j) {
        const bool sign_cond = phi >= pow_alpha(kappa[j], alpha);
        const bool size_cond = kappa[j] * kappa[j] > 2.0 / 3.0;
        if (sign_cond && size_cond) eta += h * g[j];
    }
    return eta;
}

LinearizedModel linear_model(double alpha, double rho_inf) {
    if (!(alpha < 0.0)) throw std::invalid_argument("linear_model: alpha must be negative");
    if (!(rho_inf > 0.0)) throw std::invalid_argument("linear_model: rho_inf must be positive");
    const double ch = std::cosh(rho_inf);
    LinearizedModel m;
    m.rho_inf = rho_inf;
    m.c = alpha * std::pow(std::tanh(rho_inf), -alpha - 1.0) / (ch * ch);
    return m;
}

FitResult fit_decay_rate(const DiagnosticsSeries& series, int k, double t_a, double t_b) {
    if (k < 2 || k > series.k_max)
        throw std::invalid_argument("fit_decay_rate: mode index outside the recorded range");
    std::vector<double> ts, amps;
    for (const DiagnosticsRow& row : series.rows) {
        if (row.t < t_a || row.t > t_b) continue;
        ts.push_back(row.t);
        amps.push_back(row.modes[static_cast<std::size_t>(k)]);
    }
    if (ts.size() < 10)
        throw std::invalid_argument("fit_decay_rate: fewer than 10 samples in the window");
    for (double a : amps)
        if (a <= 1e-13)
            throw std::invalid_argument("fit_decay_rate: amplitude at the noise floor");
    if (!(amps.back() < amps.front()))
        throw std::invalid_argument("fit_decay_rate: amplitudes do not decrease over the window");
    for (std::size_t i = 1; i < amps.size(); ++i)
        if (amps[i] - amps[i - 1] > 1e-12 * amps.front())
            throw std::invalid_argument("fit_decay_rate: amplitudes do not decrease over the window");

    const std::size_t m = ts.size();
    double st = 0.0, sy = 0.0;
    std::vector<double> ys(m);
    for (std::size_t i = 0; i < m; ++i) {
        ys[i] = std::log(amps[i]);
        st += ts[i];
        sy += ys[i];
    }
    const double tbar = st / static_cast<double>(m), ybar = sy / static_cast<double>(m);
    double stt = 0.0, sty = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double dt = ts[i] - tbar, dy = ys[i] - ybar;
        stt += dt * dt;
        sty += dt * dy;
        syy += dy * dy;
    }
    const double slope = sty / stt;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double resid = (ys[i] - ybar) - slope * (ts[i] - tbar);
        ss_res += resid * resid;
    }
    FitResult out;
    out.rate = -slope;
    out.r_squared = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
    return out;
}

namespace {

QuantityVerdict monotone_verdict(const DiagnosticsSeries& series,
                                 double (*get)(const DiagnosticsRow&), bool nonincreasing,
                                 double per_step_tol) {
    QuantityVerdict v;
    for (std::size_t i = 1; i < series.rows.size(); ++i) {
        const double inc = get(series.rows[i]) - get(series.rows[i - 1]);
        const double violation = nonincreasing ? inc : -inc;
        if (violation > v.max_violation) {
            v.max_violation = violation;
            v.worst_row = i;
        }
    }
    v.pass = v.max_violation <= per_step_tol;
    return v;
}

QuantityVerdict constancy_verdict(const DiagnosticsSeries& series,
                                  double (*get)(const DiagnosticsRow&), double tol) {
    QuantityVerdict v;
    if (series.rows.empty()) return v;
    const double q0 = get(series.rows.front());
    for (std::size_t i = 1; i < series.rows.size(); ++i) {
        const double dev = std::abs(get(series.rows[i]) - q0);
        if (dev > v.max_violation) {
            v.max_violation = dev;
            v.worst_row = i;
        }
    }
    v.pass = v.max_violation <= tol;
    return v;
}

double get_deficit(const DiagnosticsRow& r) { return r.deficit; }
double get_length(const DiagnosticsRow& r) { return r.length; }
double get_area(const DiagnosticsRow& r) { return r.area; }

}  // namespace

MonotonicityReport monotonicity_report(const DiagnosticsSeries& series, Mode mode) {
    MonotonicityReport rep;
    if (series.rows.size() < 2) return rep;
    const DiagnosticsRow& first = series.rows.front();
    rep.deficit = monotone_verdict(series, get_deficit, true, 1e-10 * std::max(1.0, first.deficit));
    if (mode == Mode::AreaPreserving) {
        rep.length = monotone_verdict(series, get_length, true, 1e-10 * std::max(1.0, first.length));
        rep.area = constancy_verdict(series, get_area, 1e-6 * first.area);
    } else {
        rep.length = constancy_verdict(series, get_length, 1e-6 * first.length);
        rep.area = monotone_verdict(series, get_area, false, 1e-10 * std::max(1.0, first.area));
    }
    return rep;
}

SufficientConditionReport sufficient_condition_monitor(const FlowState& state,
                                                       const FlowConfig& config, double D,
                                                       double kappa_min_initial) {
    SufficientConditionReport r;
    r.kappa_lower_bar = std::min(kappa_min_initial, 1.0);
    r.D = D;
    r.b = r.kappa_lower_bar * r.kappa_lower_bar * D / 8.0;
    r.eta_measure = eta_measure(state.curve, state.kappa, state.phi, config.alpha);
    double kmin = state.kappa[0], kmax = state.kappa[0];
    for (double k : state.kappa) {
        kmin = std::min(kmin, k);
        kmax = std::max(kmax, k);
    }
    r.v_min = 1.0 / kmax;
    r.crossing_flag = (r.v_min <= D && D <= 1.0 / kmin);
    r.v_min_above_quarter_d = r.v_min >= 0.25 * D;
    return r;
}

}  // namespace hypflow::diag
