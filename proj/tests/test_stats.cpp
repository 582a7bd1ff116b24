#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "jpirrev/stats.hpp"

using namespace jpirrev;

TEST_CASE("mann-whitney u") {
  SUBCASE("complete separation gives U = 0") {
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> b{4, 5, 6};
    const auto result = mann_whitney_u(a, b);
    CHECK(result.statistic == 0.0);
    CHECK(result.n1 == 3);
    CHECK(result.n2 == 3);
  }

  SUBCASE("identical samples are not separated") {
    const std::vector<double> a{1, 2, 3, 4, 5};
    const auto result = mann_whitney_u(a, a);
    CHECK(result.p_value > 0.9);
  }

  SUBCASE("symmetric in the sample order") {
    const std::vector<double> a{1.2, 3.4, 2.2, 5.0, 0.4};
    const std::vector<double> b{2.0, 4.1, 6.3};
    CHECK(mann_whitney_u(a, b).p_value == mann_whitney_u(b, a).p_value);
    CHECK(mann_whitney_u(a, b).statistic == mann_whitney_u(b, a).statistic);
  }

  SUBCASE("invariant under joint strictly monotone transforms") {
    const std::vector<double> a{1.0, 2.5, 3.0, 7.0};
    const std::vector<double> b{2.0, 4.0, 5.5};
    auto cube = [](const std::vector<double>& v) {
      std::vector<double> out;
      for (double x : v) out.push_back(x * x * x);
      return out;
    };
    CHECK(mann_whitney_u(a, b).p_value == mann_whitney_u(cube(a), cube(b)).p_value);
    CHECK(mann_whitney_u(a, b).statistic ==
          mann_whitney_u(cube(a), cube(b)).statistic);
  }

  SUBCASE("tie correction flag") {
    const std::vector<double> a{1, 1, 2};
    const std::vector<double> b{1, 3, 4};
    CHECK(mann_whitney_u(a, b).tie_correction_applied);
    const std::vector<double> c{1, 2, 3};
    const std::vector<double> d{4, 5, 6};
    CHECK_FALSE(mann_whitney_u(c, d).tie_correction_applied);
  }

  SUBCASE("empty sample") {
    const std::vector<double> a{1.0};
    const std::vector<double> empty;
    CHECK_THROWS_AS(mann_whitney_u(a, empty), std::domain_error);
  }

  SUBCASE("U stays within [0, n1*n2] and p within [0,1]") {
    const std::vector<double> a{3, 1, 4, 1, 5, 9, 2, 6};
    const std::vector<double> b{2, 7, 1, 8, 2, 8};
    const auto result = mann_whitney_u(a, b);
    CHECK(result.statistic >= 0.0);
    CHECK(result.statistic <= 48.0);
    CHECK(result.p_value >= 0.0);
    CHECK(result.p_value <= 1.0);
  }
}

TEST_CASE("wilcoxon signed-rank") {
  SUBCASE("all-zero differences are degenerate") {
    const std::vector<double> a{1, 2, 3};
    CHECK_THROWS_AS(wilcoxon_signed_rank(a, a), std::invalid_argument);
  }

  SUBCASE("length mismatch") {
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> b{1, 2};
    CHECK_THROWS_AS(wilcoxon_signed_rank(a, b), std::domain_error);
  }

  SUBCASE("one-sided differences give statistic 0") {
    const std::vector<double> a{1, 2, 3, 4, 5, 6};
    const std::vector<double> b{2, 3, 4, 5, 6, 7};
    CHECK(wilcoxon_signed_rank(a, b).statistic == 0.0);
  }

  SUBCASE("sign symmetry") {
    const std::vector<double> a{1.0, 4.0, 2.5, 6.0, 3.0};
    const std::vector<double> b{2.0, 3.5, 4.0, 5.0, 1.0};
    CHECK(wilcoxon_signed_rank(a, b).p_value == wilcoxon_signed_rank(b, a).p_value);
  }

  SUBCASE("zero differences are discarded") {
    const std::vector<double> a{1, 2, 3, 4};
    const std::vector<double> b{1, 2, 4, 5};  // two zero diffs dropped
    const auto result = wilcoxon_signed_rank(a, b);
    CHECK(result.statistic == 0.0);  // both remaining diffs negative
  }
}

TEST_CASE("summarize") {
  SUBCASE("hand arithmetic") {
    const std::vector<double> v{1, 2, 3};
    const auto s = summarize(v);
    CHECK(s.mean == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(s.standard_error == doctest::Approx(0.5773502691896258).epsilon(1e-12));
  }

  SUBCASE("constant sample has zero standard error") {
    const std::vector<double> v{4, 4, 4, 4};
    const auto s = summarize(v);
    CHECK(s.mean == 4.0);
    CHECK(s.standard_error == 0.0);
  }

  SUBCASE("sd=2 n=4 case") {
    const std::vector<double> v{0, 0, 0, 4};
    const auto s = summarize(v);
    CHECK(s.mean == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.standard_error == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("needs two values") {
    const std::vector<double> v{1.0};
    CHECK_THROWS_AS(summarize(v), std::domain_error);
  }
}
