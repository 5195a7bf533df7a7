#include "hypflow/spectral.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "hypflow/hyperbolic.hpp"

namespace hypflow::spectral {

namespace {

using cd = std::complex<double>;

// Twiddle factors exp(-2*pi*i*j/n), j < n/2, computed once per size.
// thread_local keeps the pure-function contract under concurrent callers.
const std::vector<cd>& twiddles(std::size_t n) {
    thread_local std::map<std::size_t, std::vector<cd>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<cd> w(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j) {
        const double ang = -two_pi * static_cast<double>(j) / static_cast<double>(n);
        w[j] = cd(std::cos(ang), std::sin(ang));
    }
    return cache.emplace(n, std::move(w)).first->second;
}

void require_pow2(std::size_t n) {
    if (!is_power_of_two(n)) throw std::invalid_argument("spectral: size must be a power of two");
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

void fft_inplace(std::vector<cd>& a, bool inverse) {
    const std::size_t n = a.size();
    require_pow2(n);
    if (n == 1) return;

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const std::vector<cd>& w = twiddles(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                cd tw = w[j * stride];
                if (inverse) tw = std::conj(tw);
                const cd u = a[start + j];
                const cd v = a[start + j + len / 2] * tw;
                a[start + j] = u + v;
                a[start + j + len / 2] = u - v;
            }
        }
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (cd& x : a) x *= scale;
    }
}

std::vector<cd> forward(const std::vector<double>& samples) {
    std::vector<cd> a(samples.begin(), samples.end());
    fft_inplace(a, false);
    return a;
}

std::vector<double> derivative(const std::vector<double>& samples, int order) {
    if (order != 1 && order != 2) throw std::invalid_argument("spectral: derivative order must be 1 or 2");
    const std::size_t n = samples.size();
    require_pow2(n);
    std::vector<cd> c = forward(samples);
    const std::size_t half = n / 2;
    for (std::size_t m = 0; m < n; ++m) {
        const double k = (m <= half) ? static_cast<double>(m)
                                     : static_cast<double>(m) - static_cast<double>(n);
        if (order == 1) {
            if (m == half) {
                c[m] = cd(0.0, 0.0);  // symmetric interpolant: no Nyquist sine partner
            } else {
                c[m] *= cd(0.0, k);
            }
        } else {
            c[m] *= -k * k;
        }
    }
    fft_inplace(c, true);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = c[j].real();
    return out;
}

TrigInterpolant make_interpolant(const std::vector<double>& samples) {
    const std::size_t n = samples.size();
    require_pow2(n);
    const std::vector<cd> c = forward(samples);
    const std::size_t half = n / 2;
    TrigInterpolant ip;
    ip.a.assign(half + 1, 0.0);
    ip.b.assign(half + 1, 0.0);
    const double inv_n = 1.0 / static_cast<double>(n);
    ip.a[0] = c[0].real() * inv_n;
    for (std::size_t k = 1; k < half; ++k) {
        ip.a[k] = 2.0 * c[k].real() * inv_n;
        ip.b[k] = -2.0 * c[k].imag() * inv_n;
    }
    ip.a[half] = c[half].real() * inv_n;
    return ip;
}

double TrigInterpolant::eval(double theta, int deriv) const {
    if (deriv < 0 || deriv > 4) throw std::invalid_argument("spectral: eval derivative order must be 0..4");
    const std::size_t kmax = a.size() - 1;
    const double c1 = std::cos(theta);
    const double s1 = std::sin(theta);
    double ck = 1.0, sk = 0.0;  // cos(k theta), sin(k theta) at k=0
    double acc = (deriv == 0) ? a[0] : 0.0;
    for (std::size_t k = 1; k <= kmax; ++k) {
        const double cn = ck * c1 - sk * s1;
        const double sn = sk * c1 + ck * s1;
        ck = cn;
        sk = sn;
        double kp = 1.0;
        for (int d = 0; d < deriv; ++d) kp *= static_cast<double>(k);
        // d-th derivative shifts the phase by d*pi/2.
        double term;
        switch (deriv & 3) {
            case 0: term = a[k] * ck + b[k] * sk; break;
            case 1: term = -a[k] * sk + b[k] * ck; break;
            case 2: term = -a[k] * ck - b[k] * sk; break;
            default: term = a[k] * sk - b[k] * ck; break;
        }
        acc += kp * term;
    }
    return acc;
}

std::vector<double> upsample(const std::vector<double>& samples, int factor) {
    if (factor < 1) throw std::invalid_argument("spectral: upsample factor must be >= 1");
    const std::size_t n = samples.size();
    require_pow2(n);
    if (factor == 1) return samples;
    if (!is_power_of_two(static_cast<std::size_t>(factor)))
        throw std::invalid_argument("spectral: upsample factor must be a power of two");
    const std::size_t m = n * static_cast<std::size_t>(factor);
    const std::vector<cd> c = forward(samples);
    std::vector<cd> big(m, cd(0.0, 0.0));
    const std::size_t half = n / 2;
    const double scale = static_cast<double>(factor);
    for (std::size_t k = 0; k < half; ++k) big[k] = c[k] * scale;
    // Split the Nyquist bin symmetrically so the refined samples follow the
    // same real interpolant the coarse grid defines.
    big[half] = c[half] * (0.5 * scale);
    big[m - half] = c[half] * (0.5 * scale);
    for (std::size_t k = half + 1; k < n; ++k) big[m - n + k] = c[k] * scale;
    fft_inplace(big, true);
    std::vector<double> out(m);
    for (std::size_t j = 0; j < m; ++j) out[j] = big[j].real();
    return out;
}

std::vector<double> mode_amplitudes(const std::vector<double>& samples, int k_max) {
    const std::size_t n = samples.size();
    require_pow2(n);
    if (k_max < 0 || static_cast<std::size_t>(k_max) >= n / 2)
        throw std::invalid_argument("spectral: k_max must satisfy 0 <= k_max < n/2");
    const std::vector<cd> c = forward(samples);
    std::vector<double> out(static_cast<std::size_t>(k_max) + 1);
    const double inv_n = 1.0 / static_cast<double>(n);
    out[0] = std::abs(c[0]) * inv_n;
    for (int k = 1; k <= k_max; ++k)
        out[static_cast<std::size_t>(k)] = 2.0 * std::abs(c[static_cast<std::size_t>(k)]) * inv_n;
    return out;
}

double tail_energy_fraction(const std::vector<double>& samples) {
    const std::size_t n = samples.size();
    require_pow2(n);
    const std::vector<cd> c = forward(samples);
    const std::size_t half = n / 2;
    const std::size_t cut = n / 3;  // top third of modes 1..n/2
    double total = 0.0, tail = 0.0;
    for (std::size_t k = 1; k <= half; ++k) {
        double e = std::norm(c[k]);
        if (k < half) e += std::norm(c[n - k]);
        total += e;
        if (k > cut) tail += e;
    }
    return total > 0.0 ? tail / total : 0.0;
}

}  // namespace hypflow::spectral
