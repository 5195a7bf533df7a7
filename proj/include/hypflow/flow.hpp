#pragma once

// Time integration of the nonlocal radial-graph flow
//   d rho/dt = -(phi(t) - kappa^alpha) * sqrt(1 + rho_theta^2 / sinh^2 rho)
// in the area- and length-preserving modes, with adaptive explicit stepping,
// pole recentering, and first-class termination outcomes.

#include <functional>
#include <vector>

#include "hypflow/diagnostics.hpp"
#include "hypflow/geometry.hpp"
#include "hypflow/kernels.hpp"
#include "hypflow/mode.hpp"
#include "hypflow/radial_curve.hpp"

namespace hypflow {

enum class StopReason { None, Converged, ReachedTEnd, CurvatureBlowUp, ConvexityLost, StepUnderflow };

const char* to_string(StopReason r);

struct FlowConfig {
    double alpha = -1.0;  // must be < 0
    Mode mode = Mode::AreaPreserving;
    int n = 256;  // power of two >= 16
    double cfl_safety = 0.2;
    double t_end = 10.0;
    double blowup_kappa = 1e4;
    double convexity_floor = 1e-8;
    double convergence_deficit = 1e-10;
    double recenter_trigger = 0.5;  // threshold on max|rho_theta| / min sinh rho
    double snapshot_interval = 0.0;  // 0 = initial and final snapshots only
    kernels::Exec exec = kernels::default_exec();

    void validate() const;  // throws std::invalid_argument
};

struct FlowState {
    double t = 0.0;
    RadialCurve curve;
    double phi = 0.0;                 // current global term
    std::vector<double> kappa;        // cached curvature profile of `curve`
    long step_count = 0;
};

// Builds a state with caches consistent with the curve. Throws when the curve
// is not convex (the flow's admissible regime).
FlowState make_state(const FlowConfig& config, RadialCurve curve, double t0 = 0.0, long step0 = 0);

// phi_1 = (integral kappa^alpha ds)/L in area mode;
// phi_2 = (integral kappa^{alpha+1} ds)/(integral kappa ds) in length mode.
// Throws std::domain_error when the curve is not convex.
double global_term(const RadialCurve& curve, double alpha, Mode mode,
                   kernels::Exec exec = kernels::default_exec());

// Per-sample d rho/dt. Throws std::domain_error when the curve is not convex.
std::vector<double> rhs(const RadialCurve& curve, double alpha, Mode mode,
                        kernels::Exec exec = kernels::default_exec());

// Strictly positive effective diffusion coefficient (parabolicity of the
// alpha < 0 regime); the stability scale for the step-size formula.
std::vector<double> diffusion_coefficient(const RadialCurve& curve, double alpha,
                                          kernels::Exec exec = kernels::default_exec());

struct DtResult {
    double dt = 0.0;
    StopReason halt = StopReason::None;  // StepUnderflow when the formula dt < 1e-14
};

// dt = cfl_safety * h^2 / max diffusion, clamped so t + dt lands on t_end.
DtResult adaptive_dt(const FlowState& state, const FlowConfig& config);

struct StepResult {
    FlowState state;
    StopReason halt = StopReason::None;
    // False when a stage left the radial-graph regime and `state` is the
    // unadvanced input; true otherwise (including threshold halts, whose
    // offending post-step state is returned for recording).
    bool advanced = false;
};

// One classical RK4 step with the global term recomputed at every stage,
// followed by the convexity-floor and blow-up checks.
StepResult step(const FlowState& state, const FlowConfig& config, double dt);

// Re-expresses the same geometric curve about a pole moved along the
// first-harmonic drift direction by the harmonic's amplitude (halved on
// star-shape failure, max 8 attempts; throws std::runtime_error if all fail).
// Identity when the drift amplitude is negligible. Length and area change
// only by the resampling error.
FlowState recenter(const FlowState& state, const FlowConfig& config);

struct RunOutcome {
    StopReason reason = StopReason::None;
    FlowState final_state;
    diag::DiagnosticsSeries series;
};

// Integrates from the initial curve until convergence, t_end, or a failure
// outcome, recording a diagnostics row every accepted step and invoking
// on_snapshot for the initial state and each snapshot_interval crossing.
// t0/step0 seed the clock for resumed runs.
RunOutcome run(const FlowConfig& config, const RadialCurve& initial, double t0 = 0.0,
               long step0 = 0, const std::function<void(const FlowState&)>& on_snapshot = {},
               int k_max = 8);

int exit_code_for(StopReason r);  // 0 converged/t_end, 2 blow-up, 3 convexity, 4 underflow

}  // namespace hypflow
