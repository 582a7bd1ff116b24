#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "jpirrev/series.hpp"

namespace jpirrev {

enum class TieMode { smallest_index, largest_index };

const char* tie_mode_name(TieMode mode);

struct EmbeddingConfig {
  int m = 3;       // window length, >= 2
  int tau = 1;     // delay, >= 1
  TieMode tie_mode = TieMode::smallest_index;

  // Number of windows a series of length L yields: L - (m-1)*tau.
  long window_count(std::size_t series_length) const {
    return static_cast<long>(series_length) -
           static_cast<long>(m - 1) * static_cast<long>(tau);
  }
};

// Rank word: entry t is the sorted position of window value t (AmP).
using RankWord = std::vector<int>;
// Index word: entry k is the original time index of the k-th smallest value (OrP).
using IndexWord = std::vector<int>;

// Global symbol s plus a rank word; the unit of coarse-graining.
struct JointPattern {
  int s = 0;  // 1 iff window mean > series mean
  RankWord word;

  bool operator==(const JointPattern&) const = default;
  bool operator<(const JointPattern& other) const {
    if (s != other.s) return s < other.s;
    return word < other.word;
  }

  // Canonical encoding "s;r1,r2,...,rm".
  std::string key() const;
  static JointPattern parse(const std::string& key);
};

RankWord amplitude_permutation(std::span<const double> window, TieMode tie_mode);
IndexWord original_permutation(std::span<const double> window, TieMode tie_mode);

JointPattern joint_pattern(std::span<const double> window, double series_mean,
                           TieMode tie_mode);

enum class Symmetry { time, amplitude };

// Counterpart under the requested reversal, computed by building a canonical
// representative window, reversing it, and re-encoding.
JointPattern symmetric_counterpart(const JointPattern& pattern, Symmetry symmetry,
                                   TieMode tie_mode = TieMode::smallest_index);

// Relative frequencies of joint patterns over all windows of a series.
// Patterns absent from the series are absent from the map.
struct PatternDistribution {
  std::map<std::string, double> entries;  // canonical key -> frequency
  std::size_t window_count = 0;
  EmbeddingConfig config;

  double prob(const std::string& key) const {
    auto it = entries.find(key);
    return it == entries.end() ? 0.0 : it->second;
  }
};

PatternDistribution pattern_distribution(const TimeSeries& series,
                                         const EmbeddingConfig& config);

}  // namespace jpirrev
