#include "jpirrev/series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>

#include "jpirrev/dsp.hpp"
#include "jpirrev/errors.hpp"
#include "jpirrev/rng.hpp"

namespace jpirrev {

namespace {

double arithmetic_mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double require(const std::optional<double>& value, const char* name) {
  if (!value) throw config_error(std::string("missing parameter: ") + name);
  return *value;
}

void check_finite(double x, std::size_t step) {
  if (!std::isfinite(x)) {
    std::ostringstream msg;
    msg << "non-finite iterate at step " << step;
    throw numeric_overflow_error(msg.str());
  }
}

}  // namespace

TimeSeries::TimeSeries(std::vector<double> samples, std::string provenance)
    : samples_(std::move(samples)),
      mean_(arithmetic_mean(samples_)),
      provenance_(std::move(provenance)) {}

const char* model_name(Model model) {
  switch (model) {
    case Model::logistic: return "logistic";
    case Model::henon: return "henon";
    case Model::lorenz: return "lorenz";
    case Model::ar1: return "ar1";
    case Model::pink: return "pink";
    case Model::uniform: return "uniform";
  }
  return "?";
}

std::optional<Model> parse_model(const std::string& name) {
  for (Model m : {Model::logistic, Model::henon, Model::lorenz, Model::ar1,
                  Model::pink, Model::uniform}) {
    if (name == model_name(m)) return m;
  }
  return std::nullopt;
}

GeneratorSpec GeneratorSpec::defaults(Model model, std::size_t length,
                                      std::uint64_t seed) {
  GeneratorSpec spec;
  spec.model = model;
  spec.length = length;
  spec.seed = seed;
  switch (model) {
    case Model::logistic:
      spec.r = 4.0;
      spec.x1 = 0.01;
      break;
    case Model::henon:
      spec.alpha = 1.4;
      spec.beta = 0.3;
      spec.x1 = 0.01;
      spec.y1 = 0.01;
      break;
    case Model::lorenz:
      spec.sigma = 10.0;
      spec.b = 8.0 / 3.0;
      spec.rho = 28.0;
      spec.dt = 0.01;
      spec.x1 = 0.0;
      spec.y1 = 0.0;
      spec.z1 = 1e-10;
      break;
    case Model::ar1:
      spec.delta = 0.3;
      break;
    case Model::pink:
    case Model::uniform:
      break;
  }
  return spec;
}

std::string GeneratorSpec::describe() const {
  std::ostringstream os;
  os << model_name(model) << " L=" << length;
  auto opt = [&os](const char* name, const std::optional<double>& v) {
    if (v) os << ' ' << name << '=' << *v;
  };
  opt("r", r);
  opt("alpha", alpha);
  opt("beta", beta);
  opt("sigma", sigma);
  opt("b", b);
  opt("rho", rho);
  opt("delta", delta);
  opt("dt", dt);
  switch (model) {
    case Model::logistic:
      os << " x1=" << x1;
      break;
    case Model::henon:
      os << " x1=" << x1 << " y1=" << y1 << " component=" << component;
      break;
    case Model::lorenz:
      os << " init=(" << x1 << ',' << y1 << ',' << z1 << ")"
         << " component=" << component;
      break;
    default:
      os << " seed=" << seed;
      break;
  }
  if (transient > 0) os << " transient=" << transient;
  return os.str();
}

TimeSeries generate_map(const GeneratorSpec& spec) {
  if (spec.length == 0) throw config_error("length must be > 0");
  const std::size_t total = spec.length + spec.transient;
  std::vector<double> out;
  out.reserve(total);
  if (spec.model == Model::logistic) {
    const double r = require(spec.r, "r");
    double x = spec.x1;
    for (std::size_t i = 0; i < total; ++i) {
      check_finite(x, i + 1);
      out.push_back(x);
      x = r * x * (1.0 - x);
    }
  } else if (spec.model == Model::henon) {
    const double alpha = require(spec.alpha, "alpha");
    const double beta = require(spec.beta, "beta");
    double x = spec.x1;
    double y = spec.y1;
    for (std::size_t i = 0; i < total; ++i) {
      check_finite(x, i + 1);
      check_finite(y, i + 1);
      out.push_back(spec.component == 'y' ? y : x);
      const double xn = 1.0 - alpha * x * x + y;
      y = beta * x;
      x = xn;
    }
  } else {
    throw config_error("generate_map expects logistic or henon");
  }
  out.erase(out.begin(), out.begin() + static_cast<long>(spec.transient));
  return TimeSeries(std::move(out), spec.describe());
}

TimeSeries integrate_lorenz(const GeneratorSpec& spec) {
  if (spec.length == 0) throw config_error("length must be > 0");
  const double sigma = require(spec.sigma, "sigma");
  const double b = require(spec.b, "b");
  const double rho = require(spec.rho, "rho");
  const double dt = require(spec.dt, "dt");
  if (dt <= 0.0) throw config_error("dt must be > 0");

  std::array<double, 3> state = {spec.x1, spec.y1, spec.z1};
  auto deriv = [&](const std::array<double, 3>& s) {
    return std::array<double, 3>{sigma * (s[1] - s[0]),
                                 s[0] * (rho - s[2]) - s[1],
                                 s[0] * s[1] - b * s[2]};
  };
  auto axpy = [](const std::array<double, 3>& s, double h,
                 const std::array<double, 3>& k) {
    return std::array<double, 3>{s[0] + h * k[0], s[1] + h * k[1],
                                 s[2] + h * k[2]};
  };

  int comp = 0;
  if (spec.component == 'y') comp = 1;
  if (spec.component == 'z') comp = 2;

  const std::size_t total = spec.length + spec.transient;
  std::vector<double> out;
  out.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    for (double v : state) check_finite(v, i + 1);
    out.push_back(state[comp]);
    // classic RK4 step
    const auto k1 = deriv(state);
    const auto k2 = deriv(axpy(state, dt / 2.0, k1));
    const auto k3 = deriv(axpy(state, dt / 2.0, k2));
    const auto k4 = deriv(axpy(state, dt, k3));
    for (int d = 0; d < 3; ++d) {
      state[d] += dt / 6.0 * (k1[d] + 2.0 * k2[d] + 2.0 * k3[d] + k4[d]);
    }
  }
  out.erase(out.begin(), out.begin() + static_cast<long>(spec.transient));
  return TimeSeries(std::move(out), spec.describe());
}

TimeSeries generate_stochastic(const GeneratorSpec& spec) {
  if (spec.length == 0) throw config_error("length must be > 0");
  RandomStream rng(spec.seed);
  std::vector<double> out;
  out.reserve(spec.length);
  switch (spec.model) {
    case Model::ar1: {
      const double delta = require(spec.delta, "delta");
      if (std::abs(delta) >= 1.0) throw config_error("ar1 requires |delta| < 1");
      double x = 0.0;
      for (std::size_t i = 0; i < spec.length + spec.transient; ++i) {
        x = delta * x + rng.gaussian();
        if (i >= spec.transient) out.push_back(x);
      }
      break;
    }
    case Model::uniform: {
      for (std::size_t i = 0; i < spec.length; ++i) out.push_back(rng.uniform());
      break;
    }
    case Model::pink: {
      // Spectral synthesis: amplitude ~ f^(-1/2), uniformly random phases,
      // zero DC term, inverse real FFT.
      const std::size_t n = spec.length;
      std::vector<std::complex<double>> spectrum(n / 2 + 1, 0.0);
      for (std::size_t k = 1; k <= n / 2; ++k) {
        const double amp = 1.0 / std::sqrt(static_cast<double>(k));
        const double phase = 2.0 * M_PI * rng.uniform();
        if (n % 2 == 0 && k == n / 2) {
          // Nyquist bin must stay real for a real signal.
          spectrum[k] = amp * (rng.uniform() < 0.5 ? 1.0 : -1.0);
        } else {
          spectrum[k] = std::polar(amp, phase);
        }
      }
      out = irfft(spectrum, n);
      break;
    }
    default:
      throw config_error("generate_stochastic expects ar1, pink, or uniform");
  }
  return TimeSeries(std::move(out), spec.describe());
}

TimeSeries generate(const GeneratorSpec& spec) {
  switch (spec.model) {
    case Model::logistic:
    case Model::henon:
      return generate_map(spec);
    case Model::lorenz:
      return integrate_lorenz(spec);
    default:
      return generate_stochastic(spec);
  }
}

TimeSeries center(const TimeSeries& series) {
  if (series.length() == 0) throw std::domain_error("cannot center an empty series");
  std::vector<double> out(series.samples());
  const double mu = series.mean();
  for (double& x : out) x -= mu;
  return TimeSeries(std::move(out), series.provenance() + " [centered]");
}

TimeSeries reverse(const TimeSeries& series, ReverseMode mode) {
  std::vector<double> out(series.samples());
  if (mode == ReverseMode::time) {
    std::reverse(out.begin(), out.end());
    return TimeSeries(std::move(out), series.provenance() + " [time-reversed]");
  }
  double scale = 0.0;
  for (double x : out) scale = std::max(scale, std::abs(x));
  if (std::abs(series.mean()) > 1e-9 * std::max(1.0, scale)) {
    throw std::invalid_argument("amplitude reversal requires a centered series");
  }
  for (double& x : out) x = -x;
  return TimeSeries(std::move(out), series.provenance() + " [amplitude-reversed]");
}

}  // namespace jpirrev
