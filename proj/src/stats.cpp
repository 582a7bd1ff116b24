#include "jpirrev/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace jpirrev {

namespace {

// Midranks (1-based, ties averaged) plus the tie term sum(t^3 - t).
struct Ranking {
  std::vector<double> ranks;
  double tie_term = 0.0;
  bool has_ties = false;
};

Ranking midranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  Ranking out;
  out.ranks.resize(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) out.ranks[order[k]] = rank;
    const double t = static_cast<double>(j - i + 1);
    if (t > 1.0) {
      out.tie_term += t * t * t - t;
      out.has_ties = true;
    }
    i = j + 1;
  }
  return out;
}

double two_sided_p_from_z(double z) {
  const double p = std::erfc(z / std::sqrt(2.0));
  return std::min(1.0, std::max(0.0, p));
}

}  // namespace

TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::domain_error("samples must be nonempty");
  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  const double n = n1 + n2;

  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const Ranking ranking = midranks(pooled);

  double rank_sum_a = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) rank_sum_a += ranking.ranks[i];
  const double u_a = rank_sum_a - n1 * (n1 + 1.0) / 2.0;
  const double u_b = n1 * n2 - u_a;
  const double u = std::min(u_a, u_b);

  const double mu = n1 * n2 / 2.0;
  const double variance =
      n1 * n2 / 12.0 * ((n + 1.0) - ranking.tie_term / (n * (n - 1.0)));

  TestResult result;
  result.statistic = u;
  result.n1 = a.size();
  result.n2 = b.size();
  result.method = StatMethod::mann_whitney_u;
  result.tie_correction_applied = ranking.has_ties;
  if (variance <= 0.0) {
    result.p_value = 1.0;  // everything tied
    return result;
  }
  const double z = std::max(0.0, std::abs(u - mu) - 0.5) / std::sqrt(variance);
  result.p_value = two_sided_p_from_z(z);
  return result;
}

TestResult wilcoxon_signed_rank(std::span<const double> a,
                                std::span<const double> b) {
  if (a.size() != b.size()) throw std::domain_error("paired samples differ in length");
  std::vector<double> diffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d != 0.0) diffs.push_back(d);
  }
  if (diffs.empty()) {
    throw std::invalid_argument("all paired differences are zero");
  }

  std::vector<double> abs_diffs(diffs.size());
  std::transform(diffs.begin(), diffs.end(), abs_diffs.begin(),
                 [](double d) { return std::abs(d); });
  const Ranking ranking = midranks(abs_diffs);

  double w_plus = 0.0;
  double w_minus = 0.0;
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    (diffs[i] > 0.0 ? w_plus : w_minus) += ranking.ranks[i];
  }
  const double w = std::min(w_plus, w_minus);
  const double n = static_cast<double>(diffs.size());
  const double mu = n * (n + 1.0) / 4.0;
  const double variance =
      n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - ranking.tie_term / 48.0;

  TestResult result;
  result.statistic = w;
  result.n1 = a.size();
  result.n2 = b.size();
  result.method = StatMethod::wilcoxon_signed_rank;
  result.tie_correction_applied = ranking.has_ties;
  if (variance <= 0.0) {
    result.p_value = 1.0;
    return result;
  }
  const double z = std::max(0.0, std::abs(w - mu) - 0.5) / std::sqrt(variance);
  result.p_value = two_sided_p_from_z(z);
  return result;
}

Summary summarize(std::span<const double> values) {
  if (values.size() < 2) throw std::domain_error("summarize needs at least 2 values");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));

  Summary summary;
  summary.mean = mean;
  summary.standard_error = sd / std::sqrt(n);
  summary.n = values.size();
  return summary;
}

}  // namespace jpirrev
