#pragma once

#include <cstdint>
#include <vector>

#include "jpirrev/irreversibility.hpp"
#include "jpirrev/series.hpp"

namespace jpirrev {

enum class Verdict { above_band, within_band, below_band };

const char* verdict_name(Verdict v);

struct SurrogateTestResult {
  Metric metric_kind = Metric::TIR;
  double original_value = 0.0;
  std::vector<double> surrogate_values;
  double p2_5 = 0.0;
  double p97_5 = 0.0;
  Verdict verdict = Verdict::within_band;
  std::size_t n_surrogates = 0;
  std::uint64_t master_seed = 0;
};

// One iAAFT surrogate: iterate {impose original spectrum magnitudes, then
// rank-remap onto the original sorted values} from a seeded shuffle until the
// rank ordering stabilizes or max_iter is reached.  The closing step is the
// rank remap, so the surrogate's sorted values equal the original's exactly.
// When discrepancy_trace is non-null it receives, per iteration, the RMS
// difference between the surrogate spectrum magnitudes and the target.
TimeSeries iaaft(const TimeSeries& series, std::uint64_t seed, int max_iter = 1000,
                 std::vector<double>* discrepancy_trace = nullptr);

SurrogateTestResult surrogate_test(const TimeSeries& series,
                                   const EmbeddingConfig& config, Metric kind,
                                   int n_surrogates, std::uint64_t master_seed,
                                   Method method = Method::forward_backward,
                                   SumMode sum_mode = SumMode::larger_first);

// Percentile by linear interpolation between closest order statistics;
// q in [0, 100].  values need not be sorted.
double percentile(std::vector<double> values, double q);

}  // namespace jpirrev
