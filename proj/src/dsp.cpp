#include "jpirrev/dsp.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace jpirrev {

namespace {

// FFTW planning is not thread-safe and plan creation is not free; cache one
// forward and one inverse plan per transform size.  Plans are executed via
// the new-array interface so cached plans can run on caller buffers.
struct PlanCache {
  std::mutex mutex;
  std::map<std::size_t, fftw_plan> forward;
  std::map<std::size_t, fftw_plan> inverse;

  fftw_plan get(std::size_t n, bool fwd) {
    std::scoped_lock lock(mutex);
    auto& table = fwd ? forward : inverse;
    auto it = table.find(n);
    if (it != table.end()) return it->second;
    // Plan on throwaway aligned buffers; FFTW_ESTIMATE leaves them untouched.
    double* real = fftw_alloc_real(n);
    fftw_complex* cplx = fftw_alloc_complex(n / 2 + 1);
    fftw_plan plan =
        fwd ? fftw_plan_dft_r2c_1d(static_cast<int>(n), real, cplx,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED)
            : fftw_plan_dft_c2r_1d(static_cast<int>(n), cplx, real,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(real);
    fftw_free(cplx);
    table.emplace(n, plan);
    return plan;
  }
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

std::vector<std::complex<double>> rfft(std::span<const double> data) {
  const std::size_t n = data.size();
  if (n == 0) throw std::domain_error("rfft: empty input");
  std::vector<double> in(data.begin(), data.end());
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_plan plan = cache().get(n, true);
  fftw_execute_dft_r2c(plan, in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> irfft(std::span<const std::complex<double>> spectrum,
                          std::size_t n) {
  if (spectrum.size() != n / 2 + 1) {
    throw std::domain_error("irfft: spectrum size must be n/2+1");
  }
  std::vector<std::complex<double>> in(spectrum.begin(), spectrum.end());
  std::vector<double> out(n);
  fftw_plan plan = cache().get(n, false);
  fftw_execute_dft_c2r(plan, reinterpret_cast<fftw_complex*>(in.data()),
                       out.data());
  for (double& x : out) x /= static_cast<double>(n);
  return out;
}

std::vector<double> periodogram(std::span<const double> data) {
  auto spectrum = rfft(data);
  std::vector<double> power;
  power.reserve(data.size() / 2);
  for (std::size_t k = 1; k <= data.size() / 2; ++k) {
    power.push_back(std::norm(spectrum[k]));
  }
  return power;
}

}  // namespace jpirrev
