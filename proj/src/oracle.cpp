#include "hypflow/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hypflow/flow.hpp"
#include "hypflow/kernels.hpp"
#include "hypflow/spectral.hpp"

namespace hypflow::oracle {

RadialCurve circle_radial_function(const CircleSpec& spec, int n) {
    if (!(spec.radius > 0.0)) throw std::invalid_argument("circle: radius must be positive");
    if (spec.center_offset < 0.0 || spec.center_offset >= spec.radius)
        throw std::invalid_argument("circle: center offset must lie in [0, radius)");
    const double td = std::tanh(spec.center_offset);
    const double sd = std::sinh(spec.center_offset);
    const double cr = std::cosh(spec.radius);
    std::vector<double> rho(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double theta = two_pi * static_cast<double>(j) / static_cast<double>(n);
        const double s = std::sin(theta);
        const double big_r = std::sqrt(1.0 + sd * sd * s * s);
        rho[static_cast<std::size_t>(j)] =
            std::atanh(td * std::cos(theta)) + std::acosh(std::max(1.0, cr / big_r));
    }
    return RadialCurve::from_samples(std::move(rho));
}

double stationary_residual(double radius, double alpha, Mode mode, int n) {
    const RadialCurve circle = circle_radial_function({radius, 0.0}, n);
    const std::vector<double> v = rhs(circle, alpha, mode, kernels::Exec::Serial);
    double worst = 0.0;
    for (double x : v) worst = std::max(worst, std::abs(x));
    return worst;
}

std::map<int, double> linearized_evolution(const std::map<int, double>& amplitudes,
                                           const diag::LinearizedModel& model, double t) {
    std::map<int, double> out;
    for (const auto& [k, a] : amplitudes)
        out[k] = (k >= 2) ? a * std::exp(-model.lambda(k) * t) : a;
    return out;
}

std::vector<double> fd_curvature(const RadialCurve& curve) {
    const std::size_t n = curve.rho.size();
    const double h = two_pi / static_cast<double>(n);
    std::vector<double> q(n), s(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double prev = curve.rho[(j + n - 1) % n];
        const double next = curve.rho[(j + 1) % n];
        q[j] = (next - prev) / (2.0 * h);
        s[j] = (next - 2.0 * curve.rho[j] + prev) / (h * h);
    }
    std::vector<double> kappa;
    kernels::curvature(curve.rho, q, s, kappa, kernels::Exec::Serial);
    return kappa;
}

double dense_curvature_extremum(const RadialCurve& curve, int factor, bool maximum) {
    if (factor < 1 || !spectral::is_power_of_two(static_cast<std::size_t>(factor)))
        throw std::invalid_argument("dense extremum: factor must be a power of two >= 1");
    const std::vector<double> fine =
        (factor == 1) ? curve.rho : spectral::upsample(curve.rho, static_cast<std::size_t>(factor));
    const std::vector<double> q = spectral::derivative(fine, 1);
    const std::vector<double> s = spectral::derivative(fine, 2);
    std::vector<double> kappa;
    kernels::curvature(fine, q, s, kappa, kernels::Exec::Serial);
    double best = kappa[0];
    for (double k : kappa) best = maximum ? std::max(best, k) : std::min(best, k);
    return best;
}

double bessel_I0(double x) {
    const double half = 0.5 * x;
    double term = 1.0, sum = 1.0;
    for (int m = 1; m < 200; ++m) {
        term *= (half / static_cast<double>(m)) * (half / static_cast<double>(m));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

namespace {

double simpson_panel(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_recurse(const std::function<double(double)>& f, double a, double fa, double b,
                       double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_panel(a, m, fa, flm, fm);
    const double right = simpson_panel(m, b, fm, frm, fb);
    if (depth > 40 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_recurse(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1) +
           simpson_recurse(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1);
}

}  // namespace

double simpson_integral(const std::function<double(double)>& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    return simpson_recurse(f, a, fa, b, fb, m, fm, simpson_panel(a, b, fa, fm, fb), tol, 0);
}

}  // namespace hypflow::oracle
