#include "diamond/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace diamond::spectral {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

std::vector<Complex> transform(std::span<const Complex> x, int sign) {
  const int n = static_cast<int>(x.size());
  std::vector<Complex> in(x.begin(), x.end());
  std::vector<Complex> out(x.size());
  if (n == 0) return out;
  auto* pin = reinterpret_cast<fftw_complex*>(in.data());
  auto* pout = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(plan_mutex());
    plan = fftw_plan_dft_1d(n, pin, pout, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(plan_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace

std::vector<Complex> fft(std::span<const Complex> x) { return transform(x, FFTW_FORWARD); }
std::vector<Complex> ifft(std::span<const Complex> x) { return transform(x, FFTW_BACKWARD); }

std::vector<double> wavenumbers(std::size_t n, double h, bool zero_nyquist) {
  std::vector<double> k(n);
  const double base = 2.0 * std::numbers::pi / (static_cast<double>(n) * h);
  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = static_cast<long>(j);
    const long m = jj <= static_cast<long>(n / 2) ? jj : jj - static_cast<long>(n);
    k[j] = base * static_cast<double>(m);
  }
  if (zero_nyquist && n % 2 == 0) k[n / 2] = 0.0;
  return k;
}

std::vector<Complex> derivative(std::span<const Complex> f, double h, unsigned order) {
  if (order == 0) return {f.begin(), f.end()};
  auto F = fft(f);
  const auto k = wavenumbers(f.size(), h, order % 2 == 1);
  const double inv_n = 1.0 / static_cast<double>(f.size());
  for (std::size_t j = 0; j < F.size(); ++j)
    F[j] *= std::pow(Complex(0.0, k[j]), static_cast<int>(order)) * inv_n;
  return ifft(F);
}

double tail_fraction(std::span<const Complex> f) {
  const auto F = fft(f);
  const std::size_t n = F.size();
  double peak = 0.0;
  double tail = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double a = std::abs(F[j]);
    peak = std::max(peak, a);
    const std::size_t m = std::min(j, n - j);
    if (8 * m >= 3 * n) tail = std::max(tail, a);
  }
  return peak == 0.0 ? 0.0 : tail / peak;
}

}  // namespace diamond::spectral
