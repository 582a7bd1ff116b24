#pragma once

#include <string>
#include <vector>

#include "jpirrev/ordinal.hpp"
#include "jpirrev/series.hpp"

namespace jpirrev {

enum class Metric { TIR, AIR };
enum class Method { forward_backward, symmetric_pairs };
enum class SumMode { larger_first, bidirectional };

const char* metric_name(Metric m);
const char* method_name(Method m);
const char* sum_mode_name(SumMode m);

// Probability-difference index p*(p-q)/(p+q) for p >= q; 0 when p = q = 0.
double ys_index(double p, double q);

struct PairEntry {
  std::string pattern;      // canonical key
  std::string counterpart;  // canonical key of the symmetric counterpart
  double p = 0.0;           // probability of `pattern` in the forward distribution
  double q = 0.0;           // probability of the paired side
  double contribution = 0.0;
};

struct IrrevReport {
  Metric kind = Metric::TIR;
  double total = 0.0;
  std::vector<PairEntry> pairs;            // every unordered pair, incl. forbidden/single
  std::vector<PairEntry> forbidden_pairs;  // both probabilities zero
  std::vector<PairEntry> single_patterns;  // exactly one probability zero
  Method method = Method::forward_backward;
  SumMode sum_mode = SumMode::larger_first;
  std::size_t window_count = 0;
  bool short_series_warning = false;  // fewer than 1000 windows
};

IrrevReport irreversibility(const TimeSeries& series, const EmbeddingConfig& config,
                            Metric kind,
                            Method method = Method::forward_backward,
                            SumMode sum_mode = SumMode::larger_first);

// Fraction of sample pairs at lag tau that agree within tol (default exact).
double des(const TimeSeries& series, int tau, double tol = 0.0);

}  // namespace jpirrev
