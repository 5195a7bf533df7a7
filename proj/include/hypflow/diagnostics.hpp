#pragma once

// Time-series recording, Fourier shape analysis, decay-rate fitting against
// the linearized spectrum, limit-radius prediction, and the curvature-bound
// sufficient-condition monitor.

#include <vector>

#include "hypflow/mode.hpp"
#include "hypflow/radial_curve.hpp"

namespace hypflow {
struct FlowConfig;
struct FlowState;
}  // namespace hypflow

namespace hypflow::diag {

struct DiagnosticsRow {
    double t = 0.0;
    double length = 0.0;
    double area = 0.0;
    double deficit = 0.0;
    double kappa_min = 0.0;
    double kappa_max = 0.0;
    double w_max = 0.0;
    double phi = 0.0;
    double rho_min = 0.0;
    double rho_max = 0.0;
    double cheb_gap = 0.0;
    double gb_residual = 0.0;
    double v_min = 0.0;        // 1/kappa_max
    double eta_measure = 0.0;  // arc length of {phi >= kappa^alpha} & {1/kappa^2 < 3/2}
    std::vector<double> modes; // amplitudes 0..k_max
    bool crossing_flag = false;  // min(1/kappa) <= D <= max(1/kappa)
};

struct DiagnosticsSeries {
    int k_max = 8;
    std::vector<DiagnosticsRow> rows;
};

// Amplitudes of rho's Fourier modes 0..k_max (full real-harmonic convention:
// a_k cos + b_k sin contributes sqrt(a_k^2 + b_k^2); mode 0 is the mean).
std::vector<double> fourier_modes(const RadialCurve& curve, int k_max);

// Radius of the geodesic circle with the conserved initial quantity:
// arcosh(A0/2pi + 1) in area mode, arsinh(L0/2pi) in length mode.
double limit_radius(Mode mode, double conserved_initial);

// Arc length of the region where phi >= kappa^alpha and kappa^2 > 2/3,
// evaluated on the sampled curvature profile with the curve's quadrature
// weights. Zero whenever the flow speed keeps one sign.
double eta_measure(const RadialCurve& curve, const std::vector<double>& kappa, double phi,
                   double alpha);

// Linearization about the limit circle: perturbation mode k >= 2 decays like
// exp(-lambda(k) t); modes 0 and 1 are neutral.
struct LinearizedModel {
    double rho_inf = 0.0;
    double c = 0.0;  // alpha * tanh^(-alpha-1)(rho_inf) / cosh^2(rho_inf), negative for alpha < 0
    double lambda(int k) const { return -c * (static_cast<double>(k) * k - 1.0); }
};

LinearizedModel linear_model(double alpha, double rho_inf);

struct FitResult {
    double rate = 0.0;  // positive for decay
    double r_squared = 0.0;
};

// Least-squares slope of log(mode-k amplitude) vs t over rows with
// t in [t_a, t_b]. Throws std::invalid_argument when the window holds fewer
// than 10 samples, any amplitude is at the 1e-13 noise floor, or the
// amplitudes fail to decrease over the window.
FitResult fit_decay_rate(const DiagnosticsSeries& series, int k, double t_a, double t_b);

struct QuantityVerdict {
    bool pass = true;
    double max_violation = 0.0;
    std::size_t worst_row = 0;
};

// Per-quantity verdicts for a recorded run: deficit non-increasing, and
// (area mode) length non-increasing / area constant, (length mode) length
// constant / area non-decreasing. Monotone checks allow 1e-10 * initial scale
// per step; constancy checks allow the 1e-6 conservation tolerance.
struct MonotonicityReport {
    QuantityVerdict deficit;
    QuantityVerdict length;
    QuantityVerdict area;
    bool all_pass() const { return deficit.pass && length.pass && area.pass; }
};

MonotonicityReport monotonicity_report(const DiagnosticsSeries& series, Mode mode);

struct SufficientConditionReport {
    double kappa_lower_bar = 0.0;  // min(min kappa(0), 1)
    double D = 0.0;                // limit radius of the conserved quantity
    double b = 0.0;                // kappa_lower_bar^2 * D / 8
    double eta_measure = 0.0;
    bool crossing_flag = false;
    double v_min = 0.0;
    bool v_min_above_quarter_d = false;
};

// Evaluates the monitor quantities on a live state. kappa_min_initial is the
// t=0 curvature minimum (not recoverable from a later state), captured once
// by the run loop.
SufficientConditionReport sufficient_condition_monitor(const FlowState& state,
                                                       const FlowConfig& config, double D,
                                                       double kappa_min_initial);

}  // namespace hypflow::diag
