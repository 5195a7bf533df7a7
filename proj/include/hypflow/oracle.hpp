#pragma once

// Independent cross-checks for the solver: closed-form circles (centered and
// offset), stationarity residuals, the linearized mode-decay map, a
// finite-difference curvature evaluator, dense-grid curvature extrema, and
// small special-function/quadrature utilities. Everything here deliberately
// avoids the spectral pipeline under test wherever an alternative exists.

#include <functional>
#include <map>
#include <vector>

#include "hypflow/diagnostics.hpp"
#include "hypflow/mode.hpp"
#include "hypflow/radial_curve.hpp"

namespace hypflow::oracle {

// Geodesic circle of the given radius whose center sits at hyperbolic
// distance center_offset from the pole along theta = 0. Requires
// 0 <= center_offset < radius so the pole stays inside the circle.
struct CircleSpec {
    double radius = 1.0;
    double center_offset = 0.0;
};

// Exact radial graph of the circle: from the hyperbolic law of cosines,
// rho(theta) = artanh(tanh d * cos theta) + arcosh(cosh r / R(theta)) with
// R = sqrt(1 + sinh^2 d * sin^2 theta).
RadialCurve circle_radial_function(const CircleSpec& spec, int n);

// max_j |d rho/dt| for the centered circle of the given radius; circles are
// stationary for both modes, so this is pure discretization noise.
double stationary_residual(double radius, double alpha, Mode mode, int n);

// Advances Fourier-mode amplitudes by the linearized flow about the limit
// circle: modes k >= 2 scale by exp(-lambda(k) t), modes 0 and 1 are neutral.
std::map<int, double> linearized_evolution(const std::map<int, double>& amplitudes,
                                           const diag::LinearizedModel& model, double t);

// Curvature from second-order centered finite differences instead of the
// spectral derivatives; agrees with the spectral profile at O(h^2).
std::vector<double> fd_curvature(const RadialCurve& curve);

// Curvature extremum located by brute force on a grid refined by the given
// power-of-two factor (spectral upsampling, then sample-wise min/max).
double dense_curvature_extremum(const RadialCurve& curve, int factor, bool maximum);

// Modified Bessel function I_0 by its power series (sum (x/2)^{2m} / (m!)^2).
double bessel_I0(double x);

// Adaptive Simpson quadrature to the given absolute tolerance.
double simpson_integral(const std::function<double(double)>& f, double a, double b, double tol);

}  // namespace hypflow::oracle
