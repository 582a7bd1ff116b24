#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace jpirrev {

// Ordered real-valued samples plus provenance (generator/file, seed, length).
// The arithmetic mean is cached at construction.
class TimeSeries {
 public:
  TimeSeries(std::vector<double> samples, std::string provenance);

  const std::vector<double>& samples() const { return samples_; }
  std::size_t length() const { return samples_.size(); }
  double mean() const { return mean_; }
  const std::string& provenance() const { return provenance_; }

 private:
  std::vector<double> samples_;
  double mean_ = 0.0;
  std::string provenance_;
};

enum class Model { logistic, henon, lorenz, ar1, pink, uniform };

const char* model_name(Model model);
std::optional<Model> parse_model(const std::string& name);

// Parameters for one model series.  defaults() fills the values used for
// the bundled model-series analyses.
struct GeneratorSpec {
  Model model = Model::logistic;
  std::size_t length = 0;

  // Map / flow parameters.
  std::optional<double> r;       // logistic growth rate
  std::optional<double> alpha;   // henon
  std::optional<double> beta;    // henon
  std::optional<double> sigma;   // lorenz
  std::optional<double> b;       // lorenz
  std::optional<double> rho;     // lorenz
  std::optional<double> delta;   // ar1 coefficient
  std::optional<double> dt;      // lorenz integration step

  double x1 = 0.0;
  double y1 = 0.0;
  double z1 = 0.0;
  char component = 'x';          // {x, y, z} for henon / lorenz
  std::size_t transient = 0;     // samples discarded before output

  std::uint64_t seed = 0;        // stochastic models only

  static GeneratorSpec defaults(Model model, std::size_t length,
                                std::uint64_t seed = 0);
  std::string describe() const;
};

TimeSeries generate_map(const GeneratorSpec& spec);
TimeSeries integrate_lorenz(const GeneratorSpec& spec);
TimeSeries generate_stochastic(const GeneratorSpec& spec);

// Dispatch on spec.model.
TimeSeries generate(const GeneratorSpec& spec);

// Subtract the arithmetic mean.
TimeSeries center(const TimeSeries& series);

enum class ReverseMode { time, amplitude };

// time: reverse sample order.  amplitude: negate every sample; requires a
// centered series (mean within 1e-9 of zero).
TimeSeries reverse(const TimeSeries& series, ReverseMode mode);

}  // namespace jpirrev
