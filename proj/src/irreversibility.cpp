#include "jpirrev/irreversibility.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace jpirrev {

const char* metric_name(Metric m) { return m == Metric::TIR ? "TIR" : "AIR"; }

const char* method_name(Method m) {
  return m == Method::forward_backward ? "forward_backward" : "symmetric_pairs";
}

const char* sum_mode_name(SumMode m) {
  return m == SumMode::larger_first ? "larger_first" : "bidirectional";
}

double ys_index(double p, double q) {
  if (p < 0.0 || q < 0.0) throw std::domain_error("probabilities must be >= 0");
  if (q > p) throw std::invalid_argument("ys_index requires p >= q");
  if (p == 0.0) return 0.0;
  if (q == 0.0) return p;
  return p * (p - q) / (p + q);
}

namespace {

double pair_contribution(double p, double q, SumMode sum_mode) {
  if (p == 0.0 && q == 0.0) return 0.0;
  if (sum_mode == SumMode::larger_first) {
    return ys_index(std::max(p, q), std::min(p, q));
  }
  // Sum of both directed Ys terms.
  const double d = p - q;
  return d * d / (p + q);
}

}  // namespace

IrrevReport irreversibility(const TimeSeries& series, const EmbeddingConfig& config,
                            Metric kind, Method method, SumMode sum_mode) {
  IrrevReport report;
  report.kind = kind;
  report.method = method;
  report.sum_mode = sum_mode;

  const long n_windows = config.window_count(series.length());
  if (n_windows < 100) {
    std::ostringstream msg;
    msg << "series too short for irreversibility: " << n_windows
        << " windows, need >= 100";
    throw std::domain_error(msg.str());
  }
  report.short_series_warning = n_windows < 1000;

  const Symmetry symmetry =
      kind == Metric::TIR ? Symmetry::time : Symmetry::amplitude;
  const ReverseMode rev_mode =
      kind == Metric::TIR ? ReverseMode::time : ReverseMode::amplitude;

  const PatternDistribution forward = pattern_distribution(series, config);
  report.window_count = forward.window_count;

  PatternDistribution backward;  // used by forward_backward only
  if (method == Method::forward_backward) {
    backward = pattern_distribution(reverse(series, rev_mode), config);
  }

  // Union of supports; for the symmetric-pair method the "other side" support
  // is the counterpart image of the forward support.
  std::set<std::string> keys;
  for (const auto& [key, prob] : forward.entries) keys.insert(key);
  if (method == Method::forward_backward) {
    for (const auto& [key, prob] : backward.entries) keys.insert(key);
  } else {
    for (const auto& [key, prob] : forward.entries) {
      keys.insert(
          symmetric_counterpart(JointPattern::parse(key), symmetry, config.tie_mode)
              .key());
    }
  }

  // Forbidden pairs (both probabilities zero) never show up in any support, so
  // enumerate the full tie-free pattern space where that is tractable.
  if (config.m <= 7) {
    JointPattern pattern;
    pattern.word.resize(config.m);
    for (int k = 0; k < config.m; ++k) pattern.word[k] = k + 1;
    do {
      for (int s : {0, 1}) {
        pattern.s = s;
        keys.insert(pattern.key());
      }
    } while (std::next_permutation(pattern.word.begin(), pattern.word.end()));
  }

  std::set<std::string> done;  // canonical unordered-pair ids
  double total = 0.0;
  for (const std::string& key : keys) {
    const std::string counterpart =
        symmetric_counterpart(JointPattern::parse(key), symmetry, config.tie_mode)
            .key();
    const std::string pair_id =
        key < counterpart ? key + "|" + counterpart : counterpart + "|" + key;
    if (!done.insert(pair_id).second) continue;

    PairEntry entry;
    entry.pattern = key;
    entry.counterpart = counterpart;
    entry.p = forward.prob(key);
    entry.q = method == Method::forward_backward ? backward.prob(key)
                                                 : forward.prob(counterpart);
    entry.contribution =
        key == counterpart ? 0.0 : pair_contribution(entry.p, entry.q, sum_mode);
    total += entry.contribution;

    if (entry.p == 0.0 && entry.q == 0.0) {
      report.forbidden_pairs.push_back(entry);
    } else if (entry.p == 0.0 || entry.q == 0.0) {
      report.single_patterns.push_back(entry);
    }
    report.pairs.push_back(std::move(entry));
  }
  report.total = total;
  return report;
}

double des(const TimeSeries& series, int tau, double tol) {
  const long lag = tau;
  if (lag < 1) throw std::domain_error("tau must be >= 1");
  if (tol < 0.0) throw std::domain_error("tolerance must be >= 0");
  const long n = static_cast<long>(series.length());
  if (lag >= n) throw std::domain_error("tau must be smaller than the series length");

  const auto& x = series.samples();
  long equal = 0;
  for (long i = 0; i + lag < n; ++i) {
    if (std::abs(x[i] - x[i + lag]) <= tol) ++equal;
  }
  return static_cast<double>(equal) / static_cast<double>(n - lag);
}

}  // namespace jpirrev
