#pragma once

#include <complex>
#include <span>
#include <vector>

namespace diamond::spectral {

using Complex = std::complex<double>;

/// Unnormalized forward DFT  X_k = sum_j x_j exp(-2 pi i jk/N).
std::vector<Complex> fft(std::span<const Complex> x);
/// Unnormalized inverse DFT  x_j = sum_k X_k exp(+2 pi i jk/N).
std::vector<Complex> ifft(std::span<const Complex> x);

/// Angular wavenumbers of the DFT bins for n samples with spacing h, in FFT
/// order. The Nyquist bin (even n) is returned as zero, so odd derivatives
/// stay real for real input.
std::vector<double> wavenumbers(std::size_t n, double h, bool zero_nyquist = true);

/// order-th derivative of periodic samples with spacing h.
std::vector<Complex> derivative(std::span<const Complex> f, double h, unsigned order = 1);

/// Largest mode magnitude in the outer quarter of the resolved band relative to
/// the largest mode overall: a cheap under-resolution estimate.
double tail_fraction(std::span<const Complex> f);

}  // namespace diamond::spectral
