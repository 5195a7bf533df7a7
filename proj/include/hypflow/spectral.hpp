#pragma once

// Spectral machinery on the uniform periodic grid theta_j = 2*pi*j/n:
// radix-2 FFT, trigonometric-interpolant differentiation and evaluation,
// zero-padded upsampling, and Fourier mode amplitudes.

#include <complex>
#include <vector>

namespace hypflow::spectral {

bool is_power_of_two(std::size_t n);

// In-place radix-2 FFT; inverse scales by 1/n. n must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse);

// Forward DFT of real samples: C_m = sum_j f_j exp(-i m theta_j).
std::vector<std::complex<double>> forward(const std::vector<double>& samples);

// Grid values of d^order/dtheta^order of the trigonometric interpolant
// (order 1 or 2). Exact for band-limited input. The Nyquist bin follows the
// symmetric real interpolant: dropped for odd orders, kept for even ones.
std::vector<double> derivative(const std::vector<double>& samples, int order);

// Real-harmonic form of the interpolant:
//   f(theta) = a_0 + sum_{k=1}^{n/2-1} (a_k cos k theta + b_k sin k theta)
//            + a_{n/2} cos((n/2) theta)
// eval() returns the deriv-th derivative (0..4) at an arbitrary angle.
struct TrigInterpolant {
    std::vector<double> a;  // size n/2+1
    std::vector<double> b;  // size n/2+1 (b[0] = b[n/2] = 0)
    double eval(double theta, int deriv = 0) const;
};

TrigInterpolant make_interpolant(const std::vector<double>& samples);

// Samples on a grid refined by an integer factor (Fourier zero padding).
std::vector<double> upsample(const std::vector<double>& samples, int factor);

// Amplitudes (mode_0..mode_k_max): |mean| for k=0, full real-harmonic
// amplitude sqrt(a_k^2+b_k^2) for k>=1. Requires k_max < n/2.
std::vector<double> mode_amplitudes(const std::vector<double>& samples, int k_max);

// Energy in the top third of the positive-frequency modes divided by total
// non-mean energy (0 when the samples are constant). Smoothness diagnostic.
double tail_energy_fraction(const std::vector<double>& samples);

}  // namespace hypflow::spectral
