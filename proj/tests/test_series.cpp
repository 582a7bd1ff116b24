#include <doctest.h>

#include <cmath>
#include <vector>

#include "jpirrev/dsp.hpp"
#include "jpirrev/errors.hpp"
#include "jpirrev/rng.hpp"
#include "jpirrev/series.hpp"

using namespace jpirrev;

namespace {

// Independent oracle: iterate the logistic recurrence by hand.
std::vector<double> logistic_oracle(double r, double x1, std::size_t n) {
  std::vector<double> out;
  double x = x1;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(x);
    x = r * x * (1.0 - x);
  }
  return out;
}

// Least-squares slope of y against x.
double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("logistic map") {
  auto spec = GeneratorSpec::defaults(Model::logistic, 10);

  SUBCASE("fixed point at x1=0") {
    spec.x1 = 0.0;
    const auto series = generate_map(spec);
    for (double v : series.samples()) CHECK(v == 0.0);
  }

  SUBCASE("matches hand iteration from x1=0.01") {
    const auto series = generate_map(spec);
    const auto oracle = logistic_oracle(4.0, 0.01, 10);
    REQUIRE(series.length() == 10);
    CHECK(series.samples()[0] == 0.01);
    CHECK(series.samples()[1] == doctest::Approx(0.0396).epsilon(1e-14));
    CHECK(series.samples()[2] == doctest::Approx(0.15212736).epsilon(1e-14));
    for (std::size_t i = 0; i < 10; ++i) {
      CHECK(series.samples()[i] == oracle[i]);
    }
  }

  SUBCASE("missing parameter") {
    spec.r.reset();
    CHECK_THROWS_AS(generate_map(spec), config_error);
  }

  SUBCASE("divergence reports the step index") {
    spec.r = 5.0;  // escapes [0,1] and blows up
    spec.x1 = 0.9;
    spec.length = 1000;
    CHECK_THROWS_AS(generate_map(spec), numeric_overflow_error);
  }
}

TEST_CASE("henon map") {
  auto spec = GeneratorSpec::defaults(Model::henon, 5);
  const auto series = generate_map(spec);
  CHECK(series.samples()[0] == 0.01);
  // 1 - 1.4*(0.01)^2 + 0.01
  CHECK(series.samples()[1] == doctest::Approx(1.00986).epsilon(1e-12));

  spec.component = 'y';
  const auto y_series = generate_map(spec);
  CHECK(y_series.samples()[0] == 0.01);
  CHECK(y_series.samples()[1] == doctest::Approx(0.3 * 0.01).epsilon(1e-14));
}

TEST_CASE("lorenz integration") {
  SUBCASE("origin is a fixed point") {
    auto spec = GeneratorSpec::defaults(Model::lorenz, 50);
    spec.z1 = 0.0;
    const auto series = integrate_lorenz(spec);
    for (double v : series.samples()) CHECK(v == 0.0);
  }

  SUBCASE("initial condition is emitted first") {
    auto spec = GeneratorSpec::defaults(Model::lorenz, 5);
    CHECK(integrate_lorenz(spec).samples()[0] == 0.0);
    spec.component = 'z';
    CHECK(integrate_lorenz(spec).samples()[0] == 1e-10);
  }

  SUBCASE("dt must be positive") {
    auto spec = GeneratorSpec::defaults(Model::lorenz, 10);
    spec.dt = 0.0;
    CHECK_THROWS_AS(integrate_lorenz(spec), config_error);
  }

  SUBCASE("RK4 matches a fine-step Euler oracle") {
    auto spec = GeneratorSpec::defaults(Model::lorenz, 11);
    spec.x1 = spec.y1 = spec.z1 = 1.0;
    spec.dt = 0.001;

    for (char comp : {'x', 'y', 'z'}) {
      spec.component = comp;
      const auto series = integrate_lorenz(spec);

      // Fine-step Euler, sampled every 0.001 time units.
      double x = 1.0, y = 1.0, z = 1.0;
      const double h = 1e-7;
      std::vector<double> oracle;
      for (int step = 0; step <= 100000; ++step) {
        if (step % 10000 == 0) {
          oracle.push_back(comp == 'x' ? x : comp == 'y' ? y : z);
        }
        const double dx = 10.0 * (y - x);
        const double dy = x * (28.0 - z) - y;
        const double dz = x * y - 8.0 / 3.0 * z;
        x += h * dx;
        y += h * dy;
        z += h * dz;
      }
      for (std::size_t i = 0; i < series.length(); ++i) {
        CHECK(std::abs(series.samples()[i] - oracle[i]) < 1e-6);
      }
    }
  }
}

TEST_CASE("stochastic generators") {
  SUBCASE("uniform stays in [0,1]") {
    auto spec = GeneratorSpec::defaults(Model::uniform, 5000, 7);
    const auto series = generate_stochastic(spec);
    for (double v : series.samples()) {
      CHECK(v >= 0.0);
      CHECK(v < 1.0);
    }
  }

  SUBCASE("ar1 with delta=0 equals the innovation stream") {
    auto spec = GeneratorSpec::defaults(Model::ar1, 100, 42);
    spec.delta = 0.0;
    const auto series = generate_stochastic(spec);
    RandomStream rng(42);
    for (double v : series.samples()) CHECK(v == rng.gaussian());
  }

  SUBCASE("ar1 stationarity bound") {
    auto spec = GeneratorSpec::defaults(Model::ar1, 100, 1);
    spec.delta = 1.0;
    CHECK_THROWS_AS(generate_stochastic(spec), config_error);
  }

  SUBCASE("pink noise periodogram slope near -1") {
    auto spec = GeneratorSpec::defaults(Model::pink, 4096, 11);
    const auto series = generate_stochastic(spec);
    const auto power = periodogram(series.samples());
    std::vector<double> logf, logp;
    for (std::size_t k = 0; k < power.size(); ++k) {
      if (power[k] > 0.0) {
        logf.push_back(std::log(static_cast<double>(k + 1)));
        logp.push_back(std::log(power[k]));
      }
    }
    const double slope = regression_slope(logf, logp);
    CHECK(slope > -1.3);
    CHECK(slope < -0.7);
  }

  SUBCASE("bit-for-bit reproducible given the seed") {
    for (Model model : {Model::ar1, Model::pink, Model::uniform}) {
      auto spec = GeneratorSpec::defaults(model, 512, 99);
      CHECK(generate(spec).samples() == generate(spec).samples());
    }
  }
}

TEST_CASE("map generators reproducible across runs") {
  for (Model model : {Model::logistic, Model::henon, Model::lorenz}) {
    auto spec = GeneratorSpec::defaults(model, 256);
    CHECK(generate(spec).samples() == generate(spec).samples());
  }
}

TEST_CASE("center") {
  SUBCASE("arithmetic") {
    const TimeSeries s({1.0, 2.0, 3.0}, "t");
    const auto c = center(s);
    CHECK(c.samples() == std::vector<double>{-1.0, 0.0, 1.0});
  }

  SUBCASE("idempotent on zero-mean input") {
    const TimeSeries s({-1.5, 0.5, 1.0}, "t");
    const auto c = center(s);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(c.samples()[i] == doctest::Approx(s.samples()[i]).epsilon(1e-15));
    }
  }

  SUBCASE("constant collapses to zero") {
    const TimeSeries s({5.0, 5.0, 5.0}, "t");
    CHECK(center(s).samples() == std::vector<double>{0.0, 0.0, 0.0});
  }

  SUBCASE("empty input") {
    CHECK_THROWS_AS(center(TimeSeries({}, "t")), std::domain_error);
  }

  SUBCASE("cached mean matches the samples") {
    const TimeSeries s({0.25, 0.5, 0.75, 1.5}, "t");
    CHECK(s.mean() == doctest::Approx(0.75).epsilon(1e-12));
  }
}

TEST_CASE("reverse") {
  SUBCASE("time reversal") {
    const TimeSeries s({1.0, 2.0, 3.0}, "t");
    CHECK(reverse(s, ReverseMode::time).samples() ==
          std::vector<double>{3.0, 2.0, 1.0});
  }

  SUBCASE("amplitude reversal of a centered series") {
    const TimeSeries s({-1.0, 0.0, 1.0}, "t");
    CHECK(reverse(s, ReverseMode::amplitude).samples() ==
          std::vector<double>{1.0, 0.0, -1.0});
  }

  SUBCASE("amplitude mode rejects non-centered input") {
    const TimeSeries s({1.0, 2.0, 3.0}, "t");
    CHECK_THROWS_AS(reverse(s, ReverseMode::amplitude), std::invalid_argument);
  }

  SUBCASE("both reversals are involutions") {
    auto spec = GeneratorSpec::defaults(Model::logistic, 64);
    const auto s = center(generate(spec));
    CHECK(reverse(reverse(s, ReverseMode::time), ReverseMode::time).samples() ==
          s.samples());
    CHECK(reverse(reverse(s, ReverseMode::amplitude), ReverseMode::amplitude)
              .samples() == s.samples());
  }
}
