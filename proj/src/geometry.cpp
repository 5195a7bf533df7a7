#include "hypflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hypflow/spectral.hpp"

namespace hypflow {

namespace {

// Fixed-order serial sum: quadrature results must not depend on the kernel
// execution policy or thread count.
double trapezoid(double h, const std::vector<double>& f) {
    double acc = 0.0;
    for (double v : f) acc += v;
    return h * acc;
}

double w_of(double kappa) { return kappa + 1.0 / kappa; }

// kappa as a function of (rho, rho_theta, rho_thetatheta) and its
// theta-derivative along the interpolant, for extremum refinement.
double kappa_value(double p, double q, double s) {
    const SinhCosh hc = sinh_cosh(p);
    const double qq = q * q;
    const double m = hc.sh * hc.sh + qq;
    return (hc.sh * hc.sh * hc.ch + 2.0 * qq * hc.ch - s * hc.sh) / (m * std::sqrt(m));
}

double kappa_at(const spectral::TrigInterpolant& ip, double theta) {
    return kappa_value(ip.eval(theta, 0), ip.eval(theta, 1), ip.eval(theta, 2));
}

double kappa_prime_at(const spectral::TrigInterpolant& ip, double theta) {
    const double p = ip.eval(theta, 0);
    const double q = ip.eval(theta, 1);
    const double s = ip.eval(theta, 2);
    const double s3 = ip.eval(theta, 3);
    const SinhCosh hc = sinh_cosh(p);
    const double qq = q * q;
    const double m = hc.sh * hc.sh + qq;
    const double m32 = m * std::sqrt(m);
    const double numer = hc.sh * hc.sh * hc.ch + 2.0 * qq * hc.ch - s * hc.sh;
    const double dn_dp = 2.0 * hc.sh * hc.ch * hc.ch + hc.sh * hc.sh * hc.sh + 2.0 * qq * hc.sh - s * hc.ch;
    const double dk_dp = (dn_dp - 3.0 * numer * hc.sh * hc.ch / m) / m32;
    const double dk_dq = (4.0 * q * hc.ch - 3.0 * numer * q / m) / m32;
    const double dk_ds = -hc.sh / m32;
    return dk_dp * q + dk_dq * s + dk_ds * s3;
}

// Polish a grid extremum of kappa inside [lo, hi] by driving kappa' to zero
// (bisection to a safe bracket, then safeguarded secant). Falls back to the
// grid value when kappa' has no sign change, e.g. on circles.
double refine_kappa_extremum(const spectral::TrigInterpolant& ip, double lo, double hi,
                             double grid_value, bool maximum) {
    double fa = kappa_prime_at(ip, lo);
    double fb = kappa_prime_at(ip, hi);
    double best = grid_value;
    if (std::isfinite(fa) && std::isfinite(fb) && fa * fb < 0.0) {
        double a = lo, b = hi;
        for (int it = 0; it < 8; ++it) {
            const double mid = 0.5 * (a + b);
            const double fm = kappa_prime_at(ip, mid);
            if (fm == 0.0) {
                a = b = mid;
                break;
            }
            if (fa * fm < 0.0) {
                b = mid;
                fb = fm;
            } else {
                a = mid;
                fa = fm;
            }
        }
        for (int it = 0; it < 12 && b - a > 1e-13; ++it) {
            double x = (fb != fa) ? (a - fa * (b - a) / (fb - fa)) : 0.5 * (a + b);
            if (!(x > a && x < b)) x = 0.5 * (a + b);
            const double fx = kappa_prime_at(ip, x);
            if (fx == 0.0) {
                a = b = x;
                break;
            }
            if (fa * fx < 0.0) {
                b = x;
                fb = fx;
            } else {
                a = x;
                fa = fx;
            }
        }
        const double refined = kappa_at(ip, 0.5 * (a + b));
        if (std::isfinite(refined)) best = maximum ? std::max(best, refined) : std::min(best, refined);
    }
    return best;
}

// One parabolic-vertex correction for a rho extremum; rho varies slowly, so a
// single interpolant evaluation at the vertex suffices.
double refine_rho_extremum(const spectral::TrigInterpolant& ip, const std::vector<double>& rho,
                           std::size_t j, double h, bool maximum) {
    const std::size_t n = rho.size();
    const double fm = rho[(j + n - 1) % n];
    const double f0 = rho[j];
    const double fp = rho[(j + 1) % n];
    double best = f0;
    const double denom = fm - 2.0 * f0 + fp;
    if (denom != 0.0) {
        double off = 0.5 * h * (fm - fp) / denom;
        off = std::clamp(off, -h, h);
        const double cand = ip.eval(two_pi * static_cast<double>(j) / static_cast<double>(n) + off, 0);
        if (std::isfinite(cand)) best = maximum ? std::max(best, cand) : std::min(best, cand);
    }
    return best;
}

}  // namespace

Derivatives derivatives(const RadialCurve& curve) {
    return Derivatives{spectral::derivative(curve.rho, 1), spectral::derivative(curve.rho, 2)};
}

std::vector<double> curvature_profile(const RadialCurve& curve, kernels::Exec exec) {
    const Derivatives d = derivatives(curve);
    std::vector<double> kappa;
    kernels::curvature(curve.rho, d.rho_theta, d.rho_thetatheta, kappa, exec);
    return kappa;
}

double length(const RadialCurve& curve) {
    const std::vector<double> rho_theta = spectral::derivative(curve.rho, 1);
    std::vector<double> g;
    kernels::arc_element(curve.rho, rho_theta, g, kernels::Exec::Serial);
    return trapezoid(two_pi / curve.n(), g);
}

double area(const RadialCurve& curve) {
    std::vector<double> f(curve.rho.size());
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = coshm1(curve.rho[j]);
    return trapezoid(two_pi / curve.n(), f);
}

RadiusBounds radius_bounds(double L, double A) {
    if (!(L > 0.0) || !(A > 0.0)) throw std::invalid_argument("radius_bounds: L and A must be positive");
    const double scale = L * L + 2.0 * two_pi * A + A * A;
    double delta = L * L - 2.0 * two_pi * A - A * A;
    if (delta < -1e-10 * scale)
        throw std::invalid_argument("radius_bounds: negative isoperimetric deficit (non-convex or corrupted input)");
    if (delta < 1e-12 * scale) delta = 0.0;
    const double root = std::sqrt(delta);
    RadiusBounds b;
    b.rho_minus_lb = 2.0 * arcoth((L + root) / A);
    const double outer_arg = (L - root) / A;
    if (outer_arg > 1.0) b.rho_plus_ub = 2.0 * arcoth(outer_arg);
    return b;
}

GeometricSummary summarize(const RadialCurve& curve, kernels::Exec exec) {
    const std::size_t n = curve.rho.size();
    const double h = two_pi / static_cast<double>(n);
    const Derivatives d = derivatives(curve);
    std::vector<double> g, kappa;
    kernels::arc_element(curve.rho, d.rho_theta, g, exec);
    kernels::curvature(curve.rho, d.rho_theta, d.rho_thetatheta, kappa, exec);

    GeometricSummary s;
    s.length = trapezoid(h, g);
    {
        std::vector<double> f(n);
        for (std::size_t j = 0; j < n; ++j) f[j] = coshm1(curve.rho[j]);
        s.area = trapezoid(h, f);
    }
    s.deficit = s.length * s.length - 2.0 * two_pi * s.area - s.area * s.area;
    {
        std::vector<double> f(n);
        for (std::size_t j = 0; j < n; ++j) f[j] = kappa[j] * g[j];
        s.total_curvature = trapezoid(h, f);
    }

    const spectral::TrigInterpolant ip = spectral::make_interpolant(curve.rho);
    std::size_t jmin = 0, jmax = 0, rmin = 0, rmax = 0;
    for (std::size_t j = 1; j < n; ++j) {
        if (kappa[j] < kappa[jmin]) jmin = j;
        if (kappa[j] > kappa[jmax]) jmax = j;
        if (curve.rho[j] < curve.rho[rmin]) rmin = j;
        if (curve.rho[j] > curve.rho[rmax]) rmax = j;
    }
    const auto bracket = [&](std::size_t j) {
        const double t = h * static_cast<double>(j);
        return std::array<double, 2>{t - h, t + h};
    };
    const auto bmin = bracket(jmin);
    const auto bmax = bracket(jmax);
    s.kappa_min = refine_kappa_extremum(ip, bmin[0], bmin[1], kappa[jmin], false);
    s.kappa_max = refine_kappa_extremum(ip, bmax[0], bmax[1], kappa[jmax], true);
    s.rho_min = refine_rho_extremum(ip, curve.rho, rmin, h, false);
    s.rho_max = refine_rho_extremum(ip, curve.rho, rmax, h, true);
    s.w_max = std::max(w_of(s.kappa_min), w_of(s.kappa_max));
    s.bounds = radius_bounds(s.length, s.area);
    return s;
}

double chebyshev_gap(const RadialCurve& curve, double alpha, kernels::Exec exec) {
    const std::size_t n = curve.rho.size();
    const double h = two_pi / static_cast<double>(n);
    const Derivatives d = derivatives(curve);
    std::vector<double> g, kappa, ka;
    kernels::arc_element(curve.rho, d.rho_theta, g, exec);
    kernels::curvature(curve.rho, d.rho_theta, d.rho_thetatheta, kappa, exec);
    for (double k : kappa)
        if (!(k > 0.0)) throw std::domain_error("chebyshev_gap: curve is not convex");
    kernels::power(kappa, alpha, ka, exec);

    std::vector<double> f(n);
    for (std::size_t j = 0; j < n; ++j) f[j] = kappa[j] * g[j];
    const double total_curv = trapezoid(h, f);
    for (std::size_t j = 0; j < n; ++j) f[j] = ka[j] * g[j];
    const double int_ka = trapezoid(h, f);
    for (std::size_t j = 0; j < n; ++j) f[j] = ka[j] * kappa[j] * g[j];
    const double int_ka1 = trapezoid(h, f);
    const double len = trapezoid(h, g);
    return total_curv * int_ka - len * int_ka1;
}

double gauss_bonnet_residual(const GeometricSummary& summary) {
    return std::abs(summary.total_curvature - (two_pi + summary.area));
}

std::vector<std::array<double, 2>> poincare_points(const RadialCurve& curve) {
    const int n = curve.n();
    std::vector<std::array<double, 2>> pts(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double r = std::tanh(0.5 * curve.rho[static_cast<std::size_t>(j)]);
        const double t = curve.theta(j);
        pts[static_cast<std::size_t>(j)] = {r * std::cos(t), r * std::sin(t)};
    }
    return pts;
}

double spectral_tail_fraction(const RadialCurve& curve) {
    return spectral::tail_energy_fraction(curve.rho);
}

}  // namespace hypflow
