#pragma once

// Property-test support: randomized band-limited convex curves, independent
// evolution-law consistency checks, and the bundled quick verification suite
// behind the CLI's verify subcommand.

#include <ostream>
#include <random>
#include <vector>

#include "hypflow/flow.hpp"
#include "hypflow/radial_curve.hpp"

namespace hypflow::verify {

// Band-limited star-shaped convex curve: random mean radius in [0.3, 2.5]
// with harmonics 1..8 under a decaying envelope, perturbation shrunk
// deterministically until the curve is convex with a safe margin.
RadialCurve random_convex_curve(std::mt19937& rng, int n);

// Instantaneous d kappa/dt on the fixed theta grid from the intrinsic
// evolution law: -d2/ds2(kappa^alpha) + (kappa^2 - 1)(phi - kappa^alpha)
// plus the tangential advection (kappa^alpha - phi)(rho_theta/sinh rho) ds.
std::vector<double> curvature_rate_evolution_identity(const FlowState& state,
                                                      const FlowConfig& config);

// The same rate through an unrelated route: chain rule of the curvature
// formula in (rho, rho_theta, rho_thetatheta) applied to the radial speed.
std::vector<double> curvature_rate_chain_rule(const FlowState& state, const FlowConfig& config);

// Max-norm relative mismatch between a second-order time difference of the
// curvature profile (two solver steps) and the evolution-identity rate.
double curvature_evolution_mismatch(const FlowState& state, const FlowConfig& config);

// Relative mismatch of time-differenced dL/dt against
// -integral kappa (phi - kappa^alpha) ds.
double length_rate_mismatch(const FlowState& state, const FlowConfig& config);

// Relative mismatch of time-differenced dA/dt against
// -integral (phi - kappa^alpha) ds (zero in area mode).
double area_rate_mismatch(const FlowState& state, const FlowConfig& config);

// Fixed-seed quick checks: circle stationarity, conservation, monotonicity,
// Gauss-Bonnet, Chebyshev gap, linearized decay rate, evolution identity.
// Prints one table row per check; returns true when all pass.
bool run_verification_suite(std::ostream& os);

}  // namespace hypflow::verify
