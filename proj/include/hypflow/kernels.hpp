#pragma once

// Per-sample kernels shared by the geometry and flow layers. Every kernel has
// one loop body used by both execution policies, so Serial and Parallel
// results are bitwise identical for any thread count; reductions never live
// here (quadratures are fixed-order serial sums in the callers).

#include <cstddef>
#include <vector>

namespace hypflow::kernels {

enum class Exec { Serial, Parallel };

// Parallel when built with OpenMP, otherwise Serial.
Exec default_exec();

// Parallel dispatch engages only at or above this many samples; below it the
// fork/join overhead dwarfs the loop. Settable so tests and benchmarks can
// force the OpenMP path at small sizes.
std::size_t parallel_cutoff();
void set_parallel_cutoff(std::size_t n);

// g = sqrt(rho_theta^2 + sinh^2 rho), the arc-length element per unit theta.
void arc_element(const std::vector<double>& rho, const std::vector<double>& rho_theta,
                 std::vector<double>& out, Exec exec);

// Geodesic curvature of the radial graph with respect to the inner normal:
// (sinh^2 rho cosh rho + 2 rho_theta^2 cosh rho - rho_thetatheta sinh rho) / g^3.
void curvature(const std::vector<double>& rho, const std::vector<double>& rho_theta,
               const std::vector<double>& rho_thetatheta, std::vector<double>& out, Exec exec);

// out = kappa^alpha (fast paths for alpha in {-1,-2,-1/2}).
void power(const std::vector<double>& kappa, double alpha, std::vector<double>& out, Exec exec);

// Radial speed -(phi - kappa^alpha) * sqrt(1 + rho_theta^2/sinh^2 rho);
// kappa_alpha holds the precomputed kappa^alpha samples.
void speed(const std::vector<double>& rho, const std::vector<double>& rho_theta,
           const std::vector<double>& kappa_alpha, double phi, std::vector<double>& out, Exec exec);

// Effective diffusion coefficient -alpha * kappa^(alpha-1) / (sinh^2 rho + rho_theta^2),
// the sensitivity of the radial speed to rho_thetatheta.
void diffusion(const std::vector<double>& rho, const std::vector<double>& rho_theta,
               const std::vector<double>& kappa, const std::vector<double>& kappa_alpha,
               double alpha, std::vector<double>& out, Exec exec);

}  // namespace hypflow::kernels
