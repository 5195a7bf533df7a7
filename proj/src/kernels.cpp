#include "hypflow/kernels.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "hypflow/hyperbolic.hpp"

namespace hypflow::kernels {

namespace {

std::atomic<std::size_t> g_parallel_cutoff{2048};

template <class Body>
void for_each_index(std::size_t n, Exec exec, Body&& body) {
#ifdef HYPFLOW_HAVE_OPENMP
    if (exec == Exec::Parallel && n >= g_parallel_cutoff.load(std::memory_order_relaxed)) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i) body(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)exec;
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

void check_sizes(std::size_t n, std::vector<double>& out) {
    if (n == 0) throw std::invalid_argument("kernels: empty input");
    out.resize(n);
}

}  // namespace

Exec default_exec() {
#ifdef HYPFLOW_HAVE_OPENMP
    return Exec::Parallel;
#else
    return Exec::Serial;
#endif
}

std::size_t parallel_cutoff() { return g_parallel_cutoff.load(std::memory_order_relaxed); }

void set_parallel_cutoff(std::size_t n) { g_parallel_cutoff.store(n, std::memory_order_relaxed); }

void arc_element(const std::vector<double>& rho, const std::vector<double>& rho_theta,
                 std::vector<double>& out, Exec exec) {
    const std::size_t n = rho.size();
    check_sizes(n, out);
    const double* p = rho.data();
    const double* q = rho_theta.data();
    double* g = out.data();
    for_each_index(n, exec, [=](std::size_t i) {
        const SinhCosh hc = sinh_cosh(p[i]);
        g[i] = std::sqrt(q[i] * q[i] + hc.sh * hc.sh);
    });
}

void curvature(const std::vector<double>& rho, const std::vector<double>& rho_theta,
               const std::vector<double>& rho_thetatheta, std::vector<double>& out, Exec exec) {
    const std::size_t n = rho.size();
    check_sizes(n, out);
    const double* p = rho.data();
    const double* q = rho_theta.data();
    const double* s = rho_thetatheta.data();
    double* k = out.data();
    for_each_index(n, exec, [=](std::size_t i) {
        const SinhCosh hc = sinh_cosh(p[i]);
        const double qq = q[i] * q[i];
        const double m = hc.sh * hc.sh + qq;
        k[i] = (hc.sh * hc.sh * hc.ch + 2.0 * qq * hc.ch - s[i] * hc.sh) / (m * std::sqrt(m));
    });
}

void power(const std::vector<double>& kappa, double alpha, std::vector<double>& out, Exec exec) {
    const std::size_t n = kappa.size();
    check_sizes(n, out);
    const double* k = kappa.data();
    double* o = out.data();
    for_each_index(n, exec, [=](std::size_t i) { o[i] = pow_alpha(k[i], alpha); });
}

void speed(const std::vector<double>& rho, const std::vector<double>& rho_theta,
           const std::vector<double>& kappa_alpha, double phi, std::vector<double>& out, Exec exec) {
    const std::size_t n = rho.size();
    check_sizes(n, out);
    const double* p = rho.data();
    const double* q = rho_theta.data();
    const double* ka = kappa_alpha.data();
    double* o = out.data();
    for_each_index(n, exec, [=](std::size_t i) {
        const SinhCosh hc = sinh_cosh(p[i]);
        const double grad = std::sqrt(hc.sh * hc.sh + q[i] * q[i]) / hc.sh;
        o[i] = -(phi - ka[i]) * grad;
    });
}

void diffusion(const std::vector<double>& rho, const std::vector<double>& rho_theta,
               const std::vector<double>& kappa, const std::vector<double>& kappa_alpha,
               double alpha, std::vector<double>& out, Exec exec) {
    const std::size_t n = rho.size();
    check_sizes(n, out);
    const double* p = rho.data();
    const double* q = rho_theta.data();
    const double* k = kappa.data();
    const double* ka = kappa_alpha.data();
    double* o = out.data();
    for_each_index(n, exec, [=](std::size_t i) {
        const SinhCosh hc = sinh_cosh(p[i]);
        const double m = hc.sh * hc.sh + q[i] * q[i];
        o[i] = -alpha * (ka[i] / k[i]) / m;
    });
}

}  // namespace hypflow::kernels
