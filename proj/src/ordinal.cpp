#include "jpirrev/ordinal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace jpirrev {

namespace {

void check_window(std::span<const double> window) {
  if (window.size() < 2) throw std::domain_error("window length must be >= 2");
  for (double x : window) {
    if (!std::isfinite(x)) throw std::domain_error("non-finite window value");
  }
}

// Stable argsort of window values; ties keep occurrence order.
std::vector<int> stable_order(std::span<const double> window) {
  std::vector<int> order(window.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return window[a] < window[b]; });
  return order;
}

}  // namespace

const char* tie_mode_name(TieMode mode) {
  return mode == TieMode::smallest_index ? "smallest_index" : "largest_index";
}

std::string JointPattern::key() const {
  std::ostringstream os;
  os << s << ';';
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0) os << ',';
    os << word[i];
  }
  return os.str();
}

JointPattern JointPattern::parse(const std::string& key) {
  JointPattern pattern;
  std::istringstream is(key);
  char sep = 0;
  if (!(is >> pattern.s >> sep) || sep != ';') {
    throw std::invalid_argument("bad pattern key: " + key);
  }
  int value = 0;
  while (is >> value) {
    pattern.word.push_back(value);
    is >> sep;
  }
  if (pattern.word.empty()) throw std::invalid_argument("bad pattern key: " + key);
  return pattern;
}

RankWord amplitude_permutation(std::span<const double> window, TieMode tie_mode) {
  check_window(window);
  const int m = static_cast<int>(window.size());
  const auto order = stable_order(window);

  RankWord ranks(m, 0);
  // Walk sorted positions in tie groups; every member of a group gets the
  // group's smallest (or largest) sorted position, 1-based.
  int j = 0;
  while (j < m) {
    int k = j;
    while (k + 1 < m && window[order[k + 1]] == window[order[j]]) ++k;
    const int rep = (tie_mode == TieMode::smallest_index) ? j + 1 : k + 1;
    for (int t = j; t <= k; ++t) ranks[order[t]] = rep;
    j = k + 1;
  }
  return ranks;
}

IndexWord original_permutation(std::span<const double> window, TieMode tie_mode) {
  check_window(window);
  const int m = static_cast<int>(window.size());
  const auto order = stable_order(window);

  IndexWord indexes(m, 0);
  int j = 0;
  while (j < m) {
    int k = j;
    while (k + 1 < m && window[order[k + 1]] == window[order[j]]) ++k;
    // Stable sort keeps tie-group original indexes ascending, so the group
    // representative is the first or last member.
    const int rep = (tie_mode == TieMode::smallest_index) ? order[j] + 1
                                                          : order[k] + 1;
    for (int t = j; t <= k; ++t) indexes[t] = rep;
    j = k + 1;
  }
  return indexes;
}

JointPattern joint_pattern(std::span<const double> window, double series_mean,
                           TieMode tie_mode) {
  double window_mean = 0.0;
  for (double x : window) window_mean += x;
  window_mean /= static_cast<double>(window.size());

  JointPattern pattern;
  pattern.s = window_mean > series_mean ? 1 : 0;
  pattern.word = amplitude_permutation(window, tie_mode);
  return pattern;
}

JointPattern symmetric_counterpart(const JointPattern& pattern, Symmetry symmetry,
                                   TieMode tie_mode) {
  // Canonical representative: the rank word read as values realizes the same
  // rank word; shift it so the window mean sits strictly on the side of zero
  // given by s.
  const std::size_t m = pattern.word.size();
  double word_mean = 0.0;
  for (int r : pattern.word) word_mean += r;
  word_mean /= static_cast<double>(m);
  const double shift = (pattern.s == 1 ? 1.0 : -1.0) - word_mean;

  std::vector<double> window(m);
  for (std::size_t t = 0; t < m; ++t) {
    window[t] = static_cast<double>(pattern.word[t]) + shift;
  }

  if (symmetry == Symmetry::time) {
    std::reverse(window.begin(), window.end());
  } else {
    for (double& x : window) x = -x;
  }
  return joint_pattern(window, 0.0, tie_mode);
}

PatternDistribution pattern_distribution(const TimeSeries& series,
                                         const EmbeddingConfig& config) {
  if (config.m < 2) throw std::domain_error("m must be >= 2");
  if (config.tau < 1) throw std::domain_error("tau must be >= 1");

  double scale = 0.0;
  for (double x : series.samples()) scale = std::max(scale, std::abs(x));
  if (std::abs(series.mean()) > 1e-9 * std::max(1.0, scale)) {
    throw std::invalid_argument("pattern_distribution requires a centered series");
  }

  const long n_windows = config.window_count(series.length());
  if (n_windows < 1) {
    std::ostringstream msg;
    msg << "series too short: need at least " << (config.m - 1) * config.tau + 1
        << " samples for m=" << config.m << " tau=" << config.tau;
    throw std::domain_error(msg.str());
  }

  const auto& x = series.samples();
  const double mu = series.mean();
  std::map<std::string, std::size_t> counts;
  std::vector<double> window(config.m);
  for (long i = 0; i < n_windows; ++i) {
    for (int j = 0; j < config.m; ++j) {
      window[j] = x[static_cast<std::size_t>(i) +
                    static_cast<std::size_t>(j) * config.tau];
    }
    ++counts[joint_pattern(window, mu, config.tie_mode).key()];
  }

  PatternDistribution dist;
  dist.window_count = static_cast<std::size_t>(n_windows);
  dist.config = config;
  for (const auto& [key, count] : counts) {
    dist.entries[key] = static_cast<double>(count) / static_cast<double>(n_windows);
  }
  return dist;
}

}  // namespace jpirrev
