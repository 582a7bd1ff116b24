#pragma once

#include <span>
#include <vector>

namespace jpirrev {

enum class StatMethod { mann_whitney_u, wilcoxon_signed_rank };

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  StatMethod method = StatMethod::mann_whitney_u;
  bool tie_correction_applied = false;
};

// Two-sided Mann-Whitney U, normal approximation with tie and continuity
// corrections.  Reports U = min(U_a, U_b).
TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

// Two-sided Wilcoxon signed-rank for paired samples; zero differences
// discarded.  Reports min(W+, W-).
TestResult wilcoxon_signed_rank(std::span<const double> a,
                                std::span<const double> b);

struct Summary {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t n = 0;
};

// Sample mean and standard error (n-1 denominator), needs >= 2 values.
Summary summarize(std::span<const double> values);

}  // namespace jpirrev
