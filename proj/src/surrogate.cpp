#include "jpirrev/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "jpirrev/dsp.hpp"
#include "jpirrev/errors.hpp"
#include "jpirrev/rng.hpp"

namespace jpirrev {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::above_band: return "above_band";
    case Verdict::within_band: return "within_band";
    case Verdict::below_band: return "below_band";
  }
  return "?";
}

namespace {

// Ranks as an argsort permutation; ties broken by index so the convergence
// check compares a well-defined ordering.
std::vector<int> argsort(const std::vector<double>& v) {
  std::vector<int> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (v[a] != v[b]) return v[a] < v[b];
    return a < b;
  });
  return order;
}

}  // namespace

TimeSeries iaaft(const TimeSeries& series, std::uint64_t seed, int max_iter,
                 std::vector<double>* discrepancy_trace) {
  const std::size_t n = series.length();
  if (n < 8) throw std::domain_error("iaaft requires at least 8 samples");
  if (max_iter < 1) throw config_error("max_iter must be >= 1");

  std::vector<double> sorted_values(series.samples());
  std::sort(sorted_values.begin(), sorted_values.end());

  // Target spectrum magnitudes from the original series.
  const auto target = rfft(series.samples());
  std::vector<double> target_mag(target.size());
  for (std::size_t k = 0; k < target.size(); ++k) {
    target_mag[k] = std::abs(target[k]);
  }

  // Seeded Fisher-Yates shuffle of the original samples as the start point.
  std::vector<double> surrogate(series.samples());
  RandomStream rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t j = rng.next_u64() % (i + 1);
    std::swap(surrogate[i], surrogate[j]);
  }

  std::vector<int> prev_order = argsort(surrogate);
  for (int iter = 0; iter < max_iter; ++iter) {
    // Impose the target magnitudes, keeping current phases.
    auto spectrum = rfft(surrogate);
    if (discrepancy_trace != nullptr) {
      double ss = 0.0;
      for (std::size_t k = 0; k < spectrum.size(); ++k) {
        const double d = std::abs(spectrum[k]) - target_mag[k];
        ss += d * d;
      }
      discrepancy_trace->push_back(
          std::sqrt(ss / static_cast<double>(spectrum.size())));
    }
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
      const double mag = std::abs(spectrum[k]);
      spectrum[k] = mag > 0.0 ? spectrum[k] * (target_mag[k] / mag)
                              : std::complex<double>(target_mag[k], 0.0);
    }
    std::vector<double> filtered = irfft(spectrum, n);

    // Rank-remap onto the original sorted values.
    const auto order = argsort(filtered);
    for (std::size_t rank = 0; rank < n; ++rank) {
      surrogate[order[rank]] = sorted_values[rank];
    }
    if (order == prev_order) break;
    prev_order = order;
  }
  return TimeSeries(std::move(surrogate),
                    series.provenance() + " [iaaft seed=" + std::to_string(seed) + "]");
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw std::domain_error("percentile of empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q / 100.0 * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

SurrogateTestResult surrogate_test(const TimeSeries& series,
                                   const EmbeddingConfig& config, Metric kind,
                                   int n_surrogates, std::uint64_t master_seed,
                                   Method method, SumMode sum_mode) {
  if (n_surrogates < 40) {
    throw config_error("n_surrogates must be >= 40 for 2.5/97.5 percentiles");
  }

  SurrogateTestResult result;
  result.metric_kind = kind;
  result.n_surrogates = static_cast<std::size_t>(n_surrogates);
  result.master_seed = master_seed;
  result.original_value =
      irreversibility(series, config, kind, method, sum_mode).total;

  result.surrogate_values.reserve(result.n_surrogates);
  for (int k = 0; k < n_surrogates; ++k) {
    const std::uint64_t seed =
        splitmix64(master_seed ^ (static_cast<std::uint64_t>(k) + 1) *
                                     0x9E3779B97F4A7C15ULL);
    const TimeSeries s = iaaft(series, seed);
    result.surrogate_values.push_back(
        irreversibility(s, config, kind, method, sum_mode).total);
  }

  result.p2_5 = percentile(result.surrogate_values, 2.5);
  result.p97_5 = percentile(result.surrogate_values, 97.5);
  if (result.original_value > result.p97_5) {
    result.verdict = Verdict::above_band;
  } else if (result.original_value < result.p2_5) {
    result.verdict = Verdict::below_band;
  } else {
    result.verdict = Verdict::within_band;
  }
  return result;
}

}  // namespace jpirrev
