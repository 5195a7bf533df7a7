#pragma once

// Closed-form hyperbolic-plane primitives (curvature -1 units).

#include <cmath>
#include <numbers>

namespace hypflow {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct SinhCosh {
    double sh;
    double ch;
};

// One exp() for both hyperbolic functions. Relative error of sh is
// ~eps*coth(x), i.e. fine for the radial ranges used here (x >= ~0.05);
// not intended for x near 0.
inline SinhCosh sinh_cosh(double x) {
    const double e = std::exp(x);
    const double inv = 1.0 / e;
    return {0.5 * (e - inv), 0.5 * (e + inv)};
}

// cosh(x) - 1 without cancellation: 2*sinh^2(x/2).
inline double coshm1(double x) {
    const double s = std::sinh(0.5 * x);
    return 2.0 * s * s;
}

// Inverse hyperbolic cotangent for x > 1, written so that arguments just
// above 1 do not cancel.
inline double arcoth(double x) {
    return 0.5 * std::log1p(2.0 / (x - 1.0));
}

// Geodesic circle of radius r.
inline double circle_length(double r) { return two_pi * std::sinh(r); }
inline double circle_area(double r) { return two_pi * coshm1(r); }
inline double circle_curvature(double r) { return 1.0 / std::tanh(r); }

// x^alpha for x > 0 with exact-reciprocal fast paths for the common
// exponents; falls back to std::pow.
inline double pow_alpha(double x, double alpha) {
    if (alpha == -1.0) return 1.0 / x;
    if (alpha == -2.0) return 1.0 / (x * x);
    if (alpha == -0.5) return 1.0 / std::sqrt(x);
    if (alpha == 1.0) return x;
    return std::pow(x, alpha);
}

}  // namespace hypflow
