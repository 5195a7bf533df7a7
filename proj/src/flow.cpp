#include "hypflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hypflow/spectral.hpp"

namespace hypflow {

namespace {

// One flow evaluation: derivatives, curvature, global term, radial speed.
struct StageEval {
    std::vector<double> rho_theta;
    std::vector<double> g;
    std::vector<double> kappa;
    std::vector<double> kappa_alpha;
    std::vector<double> speed;
    double phi = 0.0;
    bool ok = false;
};

bool samples_positive_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x) || x <= 0.0) return false;
    return true;
}

// The two global-term quotients share their weights with the quadratures the
// conservation checks use, so the semi-discrete conservation laws hold to
// rounding. Fixed summation order keeps results policy-independent.
double phi_of(const std::vector<double>& g, const std::vector<double>& kappa,
              const std::vector<double>& kappa_alpha, Mode mode) {
    const std::size_t n = g.size();
    double num = 0.0, den = 0.0;
    if (mode == Mode::AreaPreserving) {
        for (std::size_t j = 0; j < n; ++j) {
            num += kappa_alpha[j] * g[j];
            den += g[j];
        }
    } else {
        for (std::size_t j = 0; j < n; ++j) {
            num += kappa_alpha[j] * kappa[j] * g[j];
            den += kappa[j] * g[j];
        }
    }
    return num / den;
}

// cached_kappa/cached_phi short-circuit the curvature and global-term work
// when the caller already holds them for exactly this rho (the state cache).
StageEval eval_stage(const std::vector<double>& rho, double alpha, Mode mode, kernels::Exec exec,
                     const std::vector<double>* cached_kappa = nullptr,
                     const double* cached_phi = nullptr) {
    StageEval e;
    if (!samples_positive_finite(rho)) return e;
    e.rho_theta = spectral::derivative(rho, 1);
    if (cached_kappa != nullptr) {
        e.kappa = *cached_kappa;
    } else {
        const std::vector<double> rho_tt = spectral::derivative(rho, 2);
        kernels::curvature(rho, e.rho_theta, rho_tt, e.kappa, exec);
    }
    for (double k : e.kappa)
        if (!std::isfinite(k) || k <= 0.0) return e;
    kernels::arc_element(rho, e.rho_theta, e.g, exec);
    kernels::power(e.kappa, alpha, e.kappa_alpha, exec);
    e.phi = (cached_phi != nullptr) ? *cached_phi : phi_of(e.g, e.kappa, e.kappa_alpha, mode);
    kernels::speed(rho, e.rho_theta, e.kappa_alpha, e.phi, e.speed, exec);
    e.ok = true;
    return e;
}

double drift_ratio(const RadialCurve& curve) {
    const std::vector<double> rho_theta = spectral::derivative(curve.rho, 1);
    double max_dr = 0.0, min_rho = curve.rho[0];
    for (std::size_t j = 0; j < curve.rho.size(); ++j) {
        max_dr = std::max(max_dr, std::abs(rho_theta[j]));
        min_rho = std::min(min_rho, curve.rho[j]);
    }
    return max_dr / std::sinh(min_rho);
}

// Resample the curve as a radial graph about the pole moved geodesic
// distance d in direction psi, via hyperboloid-model boosts. Returns false
// when the curve is not star-shaped about the candidate pole.
bool boost_resample(const spectral::TrigInterpolant& ip, int n, double psi, double d,
                    std::vector<double>& out) {
    const SinhCosh bd = sinh_cosh(d);
    const auto boosted = [&](double theta, double& x0p, double& x1p, double& x2p) {
        const double r = ip.eval(theta, 0);
        const SinhCosh hc = sinh_cosh(r);
        const double ang = theta - psi;
        const double x0 = hc.ch;
        const double x1 = hc.sh * std::cos(ang);
        const double x2 = hc.sh * std::sin(ang);
        x0p = bd.ch * x0 - bd.sh * x1;
        x1p = -bd.sh * x0 + bd.ch * x1;
        x2p = x2;
    };
    const auto angle_near = [&](double theta, double expect) {
        double x0p, x1p, x2p;
        boosted(theta, x0p, x1p, x2p);
        double a = std::atan2(x2p, x1p);
        a += two_pi * std::round((expect - a) / two_pi);
        return a;
    };

    // Dense monotonicity scan of the new angle as a function of the old one.
    const int m = 4 * n;
    std::vector<double> scan(static_cast<std::size_t>(m) + 1);
    double prev = 0.0;
    for (int i = 0; i <= m; ++i) {
        const double theta = two_pi * static_cast<double>(i) / static_cast<double>(m);
        double x0p, x1p, x2p;
        boosted(theta, x0p, x1p, x2p);
        double a = std::atan2(x2p, x1p);
        if (i == 0) {
            prev = a;
        } else {
            a += two_pi * std::round((prev - a) / two_pi);
            if (a <= prev) return false;  // not star-shaped at scan resolution
            prev = a;
        }
        scan[static_cast<std::size_t>(i)] = a;
    }
    if (std::abs((scan[static_cast<std::size_t>(m)] - scan[0]) - two_pi) > 1e-9) return false;

    out.assign(static_cast<std::size_t>(n), 0.0);
    const double base = scan[0];
    for (int j = 0; j < n; ++j) {
        double target = two_pi * static_cast<double>(j) / static_cast<double>(n);
        target += two_pi * std::ceil((base - target) / two_pi);
        // Bracket from the scan table, then bisect on the unwrapped angle.
        const auto it = std::upper_bound(scan.begin(), scan.end(), target);
        std::size_t hi_idx = static_cast<std::size_t>(it - scan.begin());
        if (hi_idx == 0) hi_idx = 1;
        if (hi_idx > static_cast<std::size_t>(m)) hi_idx = static_cast<std::size_t>(m);
        double lo = two_pi * static_cast<double>(hi_idx - 1) / static_cast<double>(m);
        double hi = two_pi * static_cast<double>(hi_idx) / static_cast<double>(m);
        double flo = scan[hi_idx - 1];
        double fhi = scan[hi_idx];
        for (int it2 = 0; it2 < 60 && hi - lo > 1e-14; ++it2) {
            const double mid = 0.5 * (lo + hi);
            const double fmid = angle_near(mid, 0.5 * (flo + fhi));
            if (fmid < target) {
                lo = mid;
                flo = fmid;
            } else {
                hi = mid;
                fhi = fmid;
            }
        }
        double x0p, x1p, x2p;
        boosted(0.5 * (lo + hi), x0p, x1p, x2p);
        out[static_cast<std::size_t>(j)] = std::acosh(std::max(1.0, x0p));
        if (out[static_cast<std::size_t>(j)] <= 0.0) return false;  // candidate pole on the curve
    }
    return true;
}

}  // namespace

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::None: return "None";
        case StopReason::Converged: return "Converged";
        case StopReason::ReachedTEnd: return "ReachedTEnd";
        case StopReason::CurvatureBlowUp: return "CurvatureBlowUp";
        case StopReason::ConvexityLost: return "ConvexityLost";
        case StopReason::StepUnderflow: return "StepUnderflow";
    }
    return "None";
}

int exit_code_for(StopReason r) {
    switch (r) {
        case StopReason::Converged:
        case StopReason::ReachedTEnd: return 0;
        case StopReason::CurvatureBlowUp: return 2;
        case StopReason::ConvexityLost: return 3;
        case StopReason::StepUnderflow: return 4;
        case StopReason::None: break;
    }
    return 1;
}

void FlowConfig::validate() const {
    if (!(alpha < 0.0)) throw std::invalid_argument("FlowConfig: alpha must be negative");
    if (n < 16 || !spectral::is_power_of_two(static_cast<std::size_t>(n)))
        throw std::invalid_argument("FlowConfig: n must be a power of two >= 16");
    if (!(cfl_safety > 0.0) || cfl_safety > 1.0)
        throw std::invalid_argument("FlowConfig: cfl_safety must lie in (0, 1]");
    if (!(t_end > 0.0)) throw std::invalid_argument("FlowConfig: t_end must be positive");
    if (!(blowup_kappa > 0.0)) throw std::invalid_argument("FlowConfig: blowup_kappa must be positive");
    if (!(convexity_floor >= 0.0)) throw std::invalid_argument("FlowConfig: convexity_floor must be nonnegative");
    if (!(convergence_deficit > 0.0)) throw std::invalid_argument("FlowConfig: convergence_deficit must be positive");
    if (!(recenter_trigger > 0.0)) throw std::invalid_argument("FlowConfig: recenter_trigger must be positive");
    if (snapshot_interval < 0.0) throw std::invalid_argument("FlowConfig: snapshot_interval must be nonnegative");
}

FlowState make_state(const FlowConfig& config, RadialCurve curve, double t0, long step0) {
    const StageEval e = eval_stage(curve.rho, config.alpha, config.mode, config.exec);
    if (!e.ok) throw std::invalid_argument("make_state: curve must be convex with positive radii");
    FlowState s;
    s.t = t0;
    s.curve = std::move(curve);
    s.phi = e.phi;
    s.kappa = e.kappa;
    s.step_count = step0;
    return s;
}

double global_term(const RadialCurve& curve, double alpha, Mode mode, kernels::Exec exec) {
    const StageEval e = eval_stage(curve.rho, alpha, mode, exec);
    if (!e.ok) throw std::domain_error("global_term: curve is not convex");
    return e.phi;
}

std::vector<double> rhs(const RadialCurve& curve, double alpha, Mode mode, kernels::Exec exec) {
    StageEval e = eval_stage(curve.rho, alpha, mode, exec);
    if (!e.ok) throw std::domain_error("rhs: curve is not convex");
    return std::move(e.speed);
}

std::vector<double> diffusion_coefficient(const RadialCurve& curve, double alpha, kernels::Exec exec) {
    const Derivatives d = derivatives(curve);
    std::vector<double> kappa, ka, out;
    kernels::curvature(curve.rho, d.rho_theta, d.rho_thetatheta, kappa, exec);
    for (double k : kappa)
        if (!(k > 0.0)) throw std::domain_error("diffusion_coefficient: curve is not convex");
    kernels::power(kappa, alpha, ka, exec);
    kernels::diffusion(curve.rho, d.rho_theta, kappa, ka, alpha, out, exec);
    return out;
}

DtResult adaptive_dt(const FlowState& state, const FlowConfig& config) {
    const std::vector<double> d = diffusion_coefficient(state.curve, config.alpha, config.exec);
    double dmax = 0.0;
    for (double x : d) dmax = std::max(dmax, x);
    const double h = two_pi / static_cast<double>(config.n);
    const double formula = config.cfl_safety * h * h / dmax;
    if (!(formula >= 1e-14)) return {formula, StopReason::StepUnderflow};
    return {std::min(formula, config.t_end - state.t), StopReason::None};
}

StepResult step(const FlowState& state, const FlowConfig& config, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    const std::size_t n = state.curve.rho.size();
    const std::vector<double>& rho = state.curve.rho;

    const StageEval e1 = eval_stage(rho, config.alpha, config.mode, config.exec, &state.kappa, &state.phi);
    if (!e1.ok) return {state, StopReason::ConvexityLost, false};

    std::vector<double> work(n);
    const auto advance = [&](const std::vector<double>& k, double factor) {
        for (std::size_t j = 0; j < n; ++j) work[j] = rho[j] + factor * k[j];
    };

    advance(e1.speed, 0.5 * dt);
    const StageEval e2 = eval_stage(work, config.alpha, config.mode, config.exec);
    if (!e2.ok) return {state, StopReason::ConvexityLost, false};

    advance(e2.speed, 0.5 * dt);
    const StageEval e3 = eval_stage(work, config.alpha, config.mode, config.exec);
    if (!e3.ok) return {state, StopReason::ConvexityLost, false};

    advance(e3.speed, dt);
    const StageEval e4 = eval_stage(work, config.alpha, config.mode, config.exec);
    if (!e4.ok) return {state, StopReason::ConvexityLost, false};

    std::vector<double> rho_new(n);
    const double w = dt / 6.0;
    for (std::size_t j = 0; j < n; ++j)
        rho_new[j] = rho[j] + w * (e1.speed[j] + 2.0 * e2.speed[j] + 2.0 * e3.speed[j] + e4.speed[j]);

    const StageEval ef = eval_stage(rho_new, config.alpha, config.mode, config.exec);
    if (!ef.ok) return {state, StopReason::ConvexityLost, false};

    StepResult out;
    out.state.t = state.t + dt;
    out.state.curve = RadialCurve{std::move(rho_new)};
    out.state.phi = ef.phi;
    out.state.kappa = ef.kappa;
    out.state.step_count = state.step_count + 1;
    out.advanced = true;

    double kmin = out.state.kappa[0], kmax = out.state.kappa[0];
    for (double k : out.state.kappa) {
        kmin = std::min(kmin, k);
        kmax = std::max(kmax, k);
    }
    if (kmin < config.convexity_floor) out.halt = StopReason::ConvexityLost;
    else if (kmax > config.blowup_kappa) out.halt = StopReason::CurvatureBlowUp;
    return out;
}

FlowState recenter(const FlowState& state, const FlowConfig& config) {
    const std::vector<double>& rho = state.curve.rho;
    const std::size_t n = rho.size();
    const std::vector<std::complex<double>> c = spectral::forward(rho);
    const double inv_n = 1.0 / static_cast<double>(n);
    const double a1 = 2.0 * c[1].real() * inv_n;
    const double b1 = -2.0 * c[1].imag() * inv_n;
    const double mean = c[0].real() * inv_n;
    const double amp = std::hypot(a1, b1);
    if (amp < 1e-12 * mean) return state;

    const double psi = std::atan2(b1, a1);
    const spectral::TrigInterpolant ip = spectral::make_interpolant(rho);
    std::vector<double> resampled;
    for (int attempt = 0; attempt < 8; ++attempt) {
        const double d = amp / static_cast<double>(1 << attempt);
        if (boost_resample(ip, static_cast<int>(n), psi, d, resampled)) {
            FlowState out = make_state(config, RadialCurve::from_samples(std::move(resampled)),
                                       state.t, state.step_count);
            return out;
        }
    }
    throw std::runtime_error("recenter: curve is not star-shaped about any candidate pole");
}

namespace {

diag::DiagnosticsRow observe(const FlowState& state, const FlowConfig& config, int k_max, double D) {
    diag::DiagnosticsRow row;
    const GeometricSummary s = summarize(state.curve, config.exec);
    row.t = state.t;
    row.length = s.length;
    row.area = s.area;
    row.deficit = s.deficit;
    row.kappa_min = s.kappa_min;
    row.kappa_max = s.kappa_max;
    row.w_max = s.w_max;
    row.phi = state.phi;
    row.rho_min = s.rho_min;
    row.rho_max = s.rho_max;
    row.cheb_gap = chebyshev_gap(state.curve, config.alpha, config.exec);
    row.gb_residual = gauss_bonnet_residual(s);
    row.v_min = 1.0 / s.kappa_max;
    row.eta_measure = diag::eta_measure(state.curve, state.kappa, state.phi, config.alpha);
    row.modes = diag::fourier_modes(state.curve, k_max);
    const double v_lo = 1.0 / s.kappa_max;
    const double v_hi = 1.0 / s.kappa_min;
    row.crossing_flag = (v_lo <= D && D <= v_hi);
    return row;
}

// Tracked quantities for the stationarity half of the convergence test; the
// deficit participates through its absolute threshold instead, since the
// relative change of an exponentially decaying quantity never settles.
bool stationary_window(const diag::DiagnosticsSeries& series) {
    constexpr std::size_t window = 10;
    if (series.rows.size() < window + 1) return false;
    const std::size_t last = series.rows.size() - 1;
    const auto tracked = {
        +[](const diag::DiagnosticsRow& r) { return r.length; },
        +[](const diag::DiagnosticsRow& r) { return r.area; },
        +[](const diag::DiagnosticsRow& r) { return r.kappa_min; },
        +[](const diag::DiagnosticsRow& r) { return r.kappa_max; },
        +[](const diag::DiagnosticsRow& r) { return r.w_max; },
        +[](const diag::DiagnosticsRow& r) { return r.phi; },
        +[](const diag::DiagnosticsRow& r) { return r.rho_min; },
        +[](const diag::DiagnosticsRow& r) { return r.rho_max; },
    };
    for (const auto& get : tracked) {
        double lo = get(series.rows[last - window]);
        double hi = lo;
        for (std::size_t i = last - window + 1; i <= last; ++i) {
            const double v = get(series.rows[i]);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const double scale = std::max(std::abs(get(series.rows[last])), 1e-300);
        if (hi - lo > 1e-12 * scale) return false;
    }
    return true;
}

}  // namespace

RunOutcome run(const FlowConfig& config, const RadialCurve& initial, double t0, long step0,
               const std::function<void(const FlowState&)>& on_snapshot, int k_max) {
    config.validate();
    if (initial.n() != config.n)
        throw std::invalid_argument("run: initial curve sample count does not match the configuration");

    RunOutcome out;
    out.series.k_max = k_max;
    FlowState state = make_state(config, initial, t0, step0);
    const double conserved0 = (config.mode == Mode::AreaPreserving) ? area(state.curve) : length(state.curve);
    const double D = diag::limit_radius(config.mode, conserved0);

    out.series.rows.push_back(observe(state, config, k_max, D));
    if (on_snapshot) on_snapshot(state);
    long snapshot_bucket =
        config.snapshot_interval > 0.0 ? static_cast<long>(std::floor(t0 / config.snapshot_interval)) : 0;

    // A run that starts at the deficit floor never "converges"; it simply
    // integrates to t_end (geodesic circles are stationary inputs).
    const bool started_above_floor = out.series.rows.front().deficit >= config.convergence_deficit;

    while (true) {
        if (state.t >= config.t_end * (1.0 - 1e-12)) {
            out.reason = StopReason::ReachedTEnd;
            break;
        }
        if (started_above_floor && out.series.rows.back().deficit < config.convergence_deficit &&
            stationary_window(out.series)) {
            out.reason = StopReason::Converged;
            break;
        }
        if (drift_ratio(state.curve) > config.recenter_trigger) {
            state = recenter(state, config);
        }
        const DtResult dt = adaptive_dt(state, config);
        if (dt.halt != StopReason::None) {
            out.reason = dt.halt;
            break;
        }
        const StepResult sr = step(state, config, dt.dt);
        if (sr.advanced) {
            state = sr.state;
            out.series.rows.push_back(observe(state, config, k_max, D));
            if (config.snapshot_interval > 0.0 && on_snapshot) {
                const long bucket = static_cast<long>(std::floor(state.t / config.snapshot_interval));
                if (bucket > snapshot_bucket) {
                    on_snapshot(state);
                    snapshot_bucket = bucket;
                }
            }
        }
        if (sr.halt != StopReason::None) {
            out.reason = sr.halt;
            break;
        }
    }
    out.final_state = std::move(state);
    return out;
}

}  // namespace hypflow
