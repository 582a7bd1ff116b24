#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "jpirrev/irreversibility.hpp"
#include "jpirrev/series.hpp"
#include "jpirrev/stats.hpp"
#include "jpirrev/surrogate.hpp"

namespace jpirrev {

// Exit codes shared by run_job and the CLI front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 1;
inline constexpr int kExitConfig = 2;

struct AnalysisOptions {
  Method method = Method::forward_backward;
  SumMode sum_mode = SumMode::larger_first;
  TieMode tie_mode = TieMode::smallest_index;
  double tolerance = 0.0;  // DES equality tolerance
  int n_surrogates = 100;
  std::uint64_t master_seed = 1;
  bool no_timestamp = false;
  std::string format = "json";  // json | csv
};

struct AnalysisJob {
  enum class Mode { generate, analyze, surrogate_test, batch, compare };
  Mode mode = Mode::analyze;

  GeneratorSpec generator;                       // generate mode
  std::vector<std::string> inputs;               // files (analyze/surrogate/compare)
                                                 // or directories (batch)
  std::vector<std::pair<int, int>> grid = {{3, 1}};  // (m, tau)
  std::vector<std::string> metrics = {"tir", "air"};  // subset of tir/air/des
  AnalysisOptions options;
  std::string out_path;  // empty -> stdout
  StatMethod compare_test = StatMethod::mann_whitney_u;
};

// Parse a plain-text (one value per line) or single-header CSV file into one
// series per column.  Blank lines are ignored; any non-numeric token is an
// error naming the line number.
std::vector<TimeSeries> load_series_file(const std::string& path);

// Execute a job, writing the report document to job.out_path (or stdout).
// If report_out is non-null the assembled document is also stored there.
int run_job(const AnalysisJob& job, nlohmann::json* report_out = nullptr);

nlohmann::json report_to_json(const IrrevReport& report);
nlohmann::json surrogate_result_to_json(const SurrogateTestResult& result);
nlohmann::json test_result_to_json(const TestResult& result);

}  // namespace jpirrev
