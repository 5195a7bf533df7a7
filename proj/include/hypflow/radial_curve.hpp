#pragma once

// A star-shaped curve in the hyperbolic plane stored as radial samples
// rho(theta_j) > 0 over the implicit uniform grid theta_j = 2*pi*j/n.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hypflow/hyperbolic.hpp"
#include "hypflow/spectral.hpp"

namespace hypflow {

struct RadialCurve {
    std::vector<double> rho;

    int n() const { return static_cast<int>(rho.size()); }

    double theta(int j) const { return two_pi * static_cast<double>(j) / static_cast<double>(n()); }

    static std::vector<double> grid(int n) {
        std::vector<double> t(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(j)] = two_pi * static_cast<double>(j) / static_cast<double>(n);
        return t;
    }

    // Samples must be positive, finite, and n a power of two >= 16; the grid
    // is fixed by n, so smoothness is a construction-time contract checked
    // separately via the spectral tail diagnostic.
    static RadialCurve from_samples(std::vector<double> samples) {
        const std::size_t n = samples.size();
        if (n < 16 || !spectral::is_power_of_two(n))
            throw std::invalid_argument("RadialCurve: sample count must be a power of two >= 16");
        for (double r : samples) {
            if (!std::isfinite(r) || r <= 0.0)
                throw std::invalid_argument("RadialCurve: radial samples must be positive and finite");
        }
        return RadialCurve{std::move(samples)};
    }
};

}  // namespace hypflow
