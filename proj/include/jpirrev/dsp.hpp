#pragma once

#include <complex>
#include <span>
#include <vector>

namespace jpirrev {

// Forward real FFT; returns n/2+1 complex bins (FFTW halfcomplex layout).
std::vector<std::complex<double>> rfft(std::span<const double> data);

// Inverse of rfft, normalized by 1/n.
std::vector<double> irfft(std::span<const std::complex<double>> spectrum,
                          std::size_t n);

// Power spectrum |X_k|^2 for k = 1 .. n/2 (DC excluded).
std::vector<double> periodogram(std::span<const double> data);

}  // namespace jpirrev
