#pragma once

// Pure geometric measurements of convex radial graphs: curvature, length,
// area, isoperimetric deficit, deficit-based radius bounds, and the integral
// inequality gap behind the monotonicity results.

#include <array>
#include <optional>
#include <vector>

#include "hypflow/kernels.hpp"
#include "hypflow/radial_curve.hpp"

namespace hypflow {

struct Derivatives {
    std::vector<double> rho_theta;
    std::vector<double> rho_thetatheta;
};

// First and second theta-derivatives of the trigonometric interpolant.
Derivatives derivatives(const RadialCurve& curve);

// Per-sample geodesic curvature with respect to the inner normal.
std::vector<double> curvature_profile(const RadialCurve& curve,
                                      kernels::Exec exec = kernels::default_exec());

// L = integral of sqrt(rho_theta^2 + sinh^2 rho) dtheta (trapezoid rule on the
// periodic grid, spectrally accurate).
double length(const RadialCurve& curve);

// Enclosed hyperbolic area, integral of (cosh rho - 1) dtheta.
double area(const RadialCurve& curve);

struct RadiusBounds {
    double rho_minus_lb = 0.0;                 // inner-radius lower bound
    std::optional<double> rho_plus_ub;         // outer-radius upper bound; empty = unbounded
};

// Deficit-based radius bounds from L and A alone. The outer bound is a
// first-class "unbounded" when (L - sqrt(Delta))/A <= 1. Rejects
// Delta < -1e-10 * (L^2 + 4*pi*A + A^2) as corrupted input; deficits within
// +-1e-12 of that scale are treated as exactly zero before the square root,
// because for circles the computed deficit is pure cancellation noise whose
// square root would otherwise shift both bounds by ~sqrt(eps).
RadiusBounds radius_bounds(double L, double A);

struct GeometricSummary {
    double length = 0.0;
    double area = 0.0;
    double deficit = 0.0;          // L^2 - 4*pi*A - A^2, reported unclamped
    double kappa_min = 0.0;        // interpolant-refined extrema (not just grid samples)
    double kappa_max = 0.0;
    double w_max = 0.0;            // max of kappa + 1/kappa
    double total_curvature = 0.0;  // integral of kappa ds
    double rho_min = 0.0;
    double rho_max = 0.0;
    RadiusBounds bounds;
};

GeometricSummary summarize(const RadialCurve& curve,
                           kernels::Exec exec = kernels::default_exec());

// Gap of the integral inequality that drives the monotonicity statements:
// G = (integral kappa ds)(integral kappa^alpha ds) - L (integral kappa^{alpha+1} ds),
// nonnegative for convex curves and alpha < 0, zero only at constant kappa.
// Throws std::domain_error when the curve is not convex.
double chebyshev_gap(const RadialCurve& curve, double alpha,
                     kernels::Exec exec = kernels::default_exec());

// |integral kappa ds - (2*pi + A)|, the discrete Gauss-Bonnet residual.
double gauss_bonnet_residual(const GeometricSummary& summary);

// Map to the Poincare disk: Euclidean radius tanh(rho/2) at angle theta.
std::vector<std::array<double, 2>> poincare_points(const RadialCurve& curve);

// Smoothness diagnostic: spectral energy in the top third of modes / total.
double spectral_tail_fraction(const RadialCurve& curve);

}  // namespace hypflow
