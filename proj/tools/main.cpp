#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "jpirrev/errors.hpp"
#include "jpirrev/job.hpp"

using namespace jpirrev;

namespace {

std::vector<std::pair<int, int>> make_grid(const std::vector<int>& ms,
                                           const std::vector<int>& taus) {
  std::vector<std::pair<int, int>> grid;
  for (int m : ms) {
    for (int tau : taus) grid.emplace_back(m, tau);
  }
  return grid;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::transform(item.begin(), item.end(), item.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Method parse_method(const std::string& s) {
  if (s == "forward_backward") return Method::forward_backward;
  if (s == "symmetric_pairs") return Method::symmetric_pairs;
  throw config_error("unknown method: " + s);
}

SumMode parse_sum_mode(const std::string& s) {
  if (s == "larger_first") return SumMode::larger_first;
  if (s == "bidirectional") return SumMode::bidirectional;
  throw config_error("unknown sum mode: " + s);
}

TieMode parse_tie_mode(const std::string& s) {
  if (s == "smallest_index") return TieMode::smallest_index;
  if (s == "largest_index") return TieMode::largest_index;
  throw config_error("unknown tie mode: " + s);
}

struct SharedFlags {
  std::vector<int> ms = {3};
  std::vector<int> taus = {1};
  std::string metrics = "tir,air";
  std::string tie_mode = "smallest_index";
  std::string method = "forward_backward";
  std::string sum_mode = "larger_first";
  double tolerance = 0.0;
  int surrogates = 100;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out;
  bool no_timestamp = false;
};

void add_shared_flags(CLI::App* cmd, SharedFlags* flags) {
  cmd->add_option("--m", flags->ms, "window lengths (repeatable)");
  cmd->add_option("--tau", flags->taus, "delays (repeatable)");
  cmd->add_option("--metric", flags->metrics, "comma list of tir,air,des");
  cmd->add_option("--tie-mode", flags->tie_mode, "smallest_index|largest_index");
  cmd->add_option("--method", flags->method, "forward_backward|symmetric_pairs");
  cmd->add_option("--sum-mode", flags->sum_mode, "larger_first|bidirectional");
  cmd->add_option("--tolerance", flags->tolerance, "DES equality tolerance");
  cmd->add_option("--surrogates", flags->surrogates, "surrogate ensemble size");
  cmd->add_option("--seed", flags->seed, "master seed");
  cmd->add_option("--format", flags->format, "json|csv");
  cmd->add_option("--out", flags->out, "output path (default stdout)");
  cmd->add_flag("--no-timestamp", flags->no_timestamp,
                "omit the timestamp field for byte-stable output");
}

void apply_shared_flags(const SharedFlags& flags, AnalysisJob* job) {
  job->grid = make_grid(flags.ms, flags.taus);
  job->metrics = split_list(flags.metrics);
  for (const std::string& metric : job->metrics) {
    if (metric != "tir" && metric != "air" && metric != "des") {
      throw config_error("unknown metric: " + metric);
    }
  }
  job->options.tie_mode = parse_tie_mode(flags.tie_mode);
  job->options.method = parse_method(flags.method);
  job->options.sum_mode = parse_sum_mode(flags.sum_mode);
  job->options.tolerance = flags.tolerance;
  job->options.n_surrogates = flags.surrogates;
  job->options.master_seed = flags.seed;
  job->options.format = flags.format;
  job->options.no_timestamp = flags.no_timestamp;
  job->out_path = flags.out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint-permutation time/amplitude irreversibility analysis"};
  app.require_subcommand(1);

  // Optional flat key=value config file; flags take precedence.
  auto* config_opt = app.set_config("--config");
  if (const char* env = std::getenv("JPIRREV_CONFIG")) {
    config_opt->default_str(env);
  }

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "generate a model series");
  std::string gen_model = "logistic";
  std::size_t gen_length = 50400;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  std::string gen_component = "x";
  std::size_t gen_transient = 0;
  std::optional<double> p_r, p_alpha, p_beta, p_sigma, p_b, p_rho, p_delta, p_dt;
  std::optional<double> p_x1, p_y1, p_z1;
  gen_cmd->add_option("--model", gen_model, "logistic|henon|lorenz|ar1|pink|uniform")
      ->required();
  gen_cmd->add_option("--length", gen_length, "number of samples");
  gen_cmd->add_option("--seed", gen_seed, "seed (stochastic models)");
  gen_cmd->add_option("--out", gen_out, "output path (default stdout)");
  gen_cmd->add_option("--component", gen_component, "x|y|z");
  gen_cmd->add_option("--transient", gen_transient, "samples to discard");
  gen_cmd->add_option("--r", p_r, "logistic r");
  gen_cmd->add_option("--alpha", p_alpha, "henon alpha");
  gen_cmd->add_option("--beta", p_beta, "henon beta");
  gen_cmd->add_option("--sigma", p_sigma, "lorenz sigma");
  gen_cmd->add_option("--b", p_b, "lorenz b");
  gen_cmd->add_option("--rho", p_rho, "lorenz rho");
  gen_cmd->add_option("--delta", p_delta, "ar1 delta");
  gen_cmd->add_option("--dt", p_dt, "lorenz step size");
  gen_cmd->add_option("--x1", p_x1, "initial x");
  gen_cmd->add_option("--y1", p_y1, "initial y");
  gen_cmd->add_option("--z1", p_z1, "initial z");

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "analyze series files");
  std::vector<std::string> analyze_inputs;
  SharedFlags analyze_flags;
  analyze_cmd->add_option("--input", analyze_inputs, "input file(s)")->required();
  add_shared_flags(analyze_cmd, &analyze_flags);

  // surrogate-test
  auto* surr_cmd = app.add_subcommand("surrogate-test",
                                      "iAAFT significance test for TIR/AIR");
  std::vector<std::string> surr_inputs;
  SharedFlags surr_flags;
  surr_cmd->add_option("--input", surr_inputs, "input file(s)")->required();
  add_shared_flags(surr_cmd, &surr_flags);

  // batch
  auto* batch_cmd = app.add_subcommand("batch", "analyze directories as groups");
  std::vector<std::string> batch_dirs;
  SharedFlags batch_flags;
  batch_cmd->add_option("--dir", batch_dirs, "group directories")->required();
  add_shared_flags(batch_cmd, &batch_flags);

  // compare
  auto* compare_cmd = app.add_subcommand("compare", "nonparametric two-sample test");
  std::vector<std::string> compare_inputs;
  std::string compare_test = "mann-whitney";
  SharedFlags compare_flags;
  compare_cmd->add_option("--input", compare_inputs, "two value files")->required();
  compare_cmd->add_option("--test", compare_test, "mann-whitney|wilcoxon");
  add_shared_flags(compare_cmd, &compare_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    AnalysisJob job;
    if (gen_cmd->parsed()) {
      job.mode = AnalysisJob::Mode::generate;
      auto model = parse_model(gen_model);
      if (!model) throw config_error("unknown model: " + gen_model);
      GeneratorSpec spec = GeneratorSpec::defaults(*model, gen_length, gen_seed);
      if (p_r) spec.r = p_r;
      if (p_alpha) spec.alpha = p_alpha;
      if (p_beta) spec.beta = p_beta;
      if (p_sigma) spec.sigma = p_sigma;
      if (p_b) spec.b = p_b;
      if (p_rho) spec.rho = p_rho;
      if (p_delta) spec.delta = p_delta;
      if (p_dt) spec.dt = p_dt;
      if (p_x1) spec.x1 = *p_x1;
      if (p_y1) spec.y1 = *p_y1;
      if (p_z1) spec.z1 = *p_z1;
      spec.component = gen_component.empty() ? 'x' : gen_component[0];
      spec.transient = gen_transient;
      job.generator = spec;
      job.out_path = gen_out;
      return run_job(job);
    }
    if (analyze_cmd->parsed()) {
      job.mode = AnalysisJob::Mode::analyze;
      job.inputs = analyze_inputs;
      apply_shared_flags(analyze_flags, &job);
      return run_job(job);
    }
    if (surr_cmd->parsed()) {
      job.mode = AnalysisJob::Mode::surrogate_test;
      job.inputs = surr_inputs;
      apply_shared_flags(surr_flags, &job);
      return run_job(job);
    }
    if (batch_cmd->parsed()) {
      job.mode = AnalysisJob::Mode::batch;
      job.inputs = batch_dirs;
      apply_shared_flags(batch_flags, &job);
      return run_job(job);
    }
    if (compare_cmd->parsed()) {
      job.mode = AnalysisJob::Mode::compare;
      job.inputs = compare_inputs;
      apply_shared_flags(compare_flags, &job);
      if (compare_test == "mann-whitney") {
        job.compare_test = StatMethod::mann_whitney_u;
      } else if (compare_test == "wilcoxon") {
        job.compare_test = StatMethod::wilcoxon_signed_rank;
      } else {
        throw config_error("unknown test: " + compare_test);
      }
      return run_job(job);
    }
  } catch (const config_error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPartial;
  }
  return kExitOk;
}
