#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hypflow/flow.hpp"
#include "hypflow/geometry.hpp"
#include "hypflow/kernels.hpp"
#include "hypflow/verification.hpp"

using namespace hypflow;

namespace {

// Restores the dispatch cutoff even when a CHECK fails mid-test.
struct CutoffGuard {
    std::size_t saved = kernels::parallel_cutoff();
    ~CutoffGuard() { kernels::set_parallel_cutoff(saved); }
};

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] != b[j]) return false;
    return true;
}

}  // namespace

TEST_CASE("parallel cutoff is settable and restored") {
    const std::size_t original = kernels::parallel_cutoff();
    {
        CutoffGuard guard;
        kernels::set_parallel_cutoff(17);
        CHECK(kernels::parallel_cutoff() == 17);
    }
    CHECK(kernels::parallel_cutoff() == original);
}

TEST_CASE("serial and parallel kernels agree bitwise") {
    CutoffGuard guard;
    kernels::set_parallel_cutoff(1);  // force the parallel path even at small n
    std::mt19937 rng(99u);
    for (int n : {64, 256, 4096}) {
        auto curve = verify::random_convex_curve(rng, n);
        auto d = derivatives(curve);
        const std::size_t un = static_cast<std::size_t>(n);

        std::vector<double> g_s(un), g_p(un);
        kernels::arc_element(curve.rho, d.rho_theta, g_s, kernels::Exec::Serial);
        kernels::arc_element(curve.rho, d.rho_theta, g_p, kernels::Exec::Parallel);
        CHECK(bitwise_equal(g_s, g_p));

        std::vector<double> k_s(un), k_p(un);
        kernels::curvature(curve.rho, d.rho_theta, d.rho_thetatheta, k_s, kernels::Exec::Serial);
        kernels::curvature(curve.rho, d.rho_theta, d.rho_thetatheta, k_p, kernels::Exec::Parallel);
        CHECK(bitwise_equal(k_s, k_p));

        for (double alpha : {-0.5, -1.0, -2.0, -1.3}) {
            std::vector<double> ka_s(un), ka_p(un);
            kernels::power(k_s, alpha, ka_s, kernels::Exec::Serial);
            kernels::power(k_p, alpha, ka_p, kernels::Exec::Parallel);
            CHECK(bitwise_equal(ka_s, ka_p));

            std::vector<double> v_s(un), v_p(un);
            kernels::speed(curve.rho, d.rho_theta, ka_s, 0.9, v_s, kernels::Exec::Serial);
            kernels::speed(curve.rho, d.rho_theta, ka_p, 0.9, v_p, kernels::Exec::Parallel);
            CHECK(bitwise_equal(v_s, v_p));

            std::vector<double> dcoef_s(un), dcoef_p(un);
            kernels::diffusion(curve.rho, d.rho_theta, k_s, ka_s, alpha, dcoef_s, kernels::Exec::Serial);
            kernels::diffusion(curve.rho, d.rho_theta, k_p, ka_p, alpha, dcoef_p, kernels::Exec::Parallel);
            CHECK(bitwise_equal(dcoef_s, dcoef_p));
        }
    }
}

TEST_CASE("flow trajectories are bitwise independent of the execution policy") {
    CutoffGuard guard;
    kernels::set_parallel_cutoff(1);

    FlowConfig serial_cfg;
    serial_cfg.alpha = -1.0;
    serial_cfg.n = 128;
    serial_cfg.t_end = 0.05;
    serial_cfg.exec = kernels::Exec::Serial;
    FlowConfig parallel_cfg = serial_cfg;
    parallel_cfg.exec = kernels::Exec::Parallel;

    std::vector<double> rho(128);
    for (int j = 0; j < 128; ++j) rho[static_cast<std::size_t>(j)] = 2.0 + std::cos(two_pi * j / 128);
    auto initial = RadialCurve::from_samples(rho);

    auto a = run(serial_cfg, initial);
    auto b = run(parallel_cfg, initial);
    CHECK(a.reason == b.reason);
    CHECK(a.final_state.step_count == b.final_state.step_count);
    CHECK(a.final_state.t == b.final_state.t);
    CHECK(bitwise_equal(a.final_state.curve.rho, b.final_state.curve.rho));
    CHECK(bitwise_equal(a.final_state.kappa, b.final_state.kappa));
    CHECK(a.final_state.phi == b.final_state.phi);
}

TEST_CASE("curvature kernel matches the geometry wrapper") {
    std::mt19937 rng(5u);
    auto curve = verify::random_convex_curve(rng, 128);
    auto via_wrapper = curvature_profile(curve, kernels::Exec::Serial);
    auto d = derivatives(curve);
    std::vector<double> direct(curve.rho.size());
    kernels::curvature(curve.rho, d.rho_theta, d.rho_thetatheta, direct, kernels::Exec::Serial);
    CHECK(bitwise_equal(via_wrapper, direct));
}
