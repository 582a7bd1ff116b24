#include "jpirrev/job.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "jpirrev/errors.hpp"

namespace fs = std::filesystem;

namespace jpirrev {

namespace {

bool parse_double(const std::string& token, double* out) {
  const char* begin = token.c_str();
  char* end = nullptr;
  *out = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end != '\0') {
    if (!std::isspace(static_cast<unsigned char>(*end))) return false;
    ++end;
  }
  return true;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  return cells;
}

std::string iso_timestamp() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json job_echo(const AnalysisJob& job) {
  nlohmann::json grid = nlohmann::json::array();
  for (const auto& [m, tau] : job.grid) grid.push_back({{"m", m}, {"tau", tau}});
  return {
      {"metrics", job.metrics},
      {"grid", grid},
      {"method", method_name(job.options.method)},
      {"sum_mode", sum_mode_name(job.options.sum_mode)},
      {"tie_mode", tie_mode_name(job.options.tie_mode)},
      {"tolerance", job.options.tolerance},
      {"n_surrogates", job.options.n_surrogates},
      {"master_seed", job.options.master_seed},
      {"centering", "automatic"},
  };
}

bool wants(const AnalysisJob& job, const std::string& metric) {
  return std::find(job.metrics.begin(), job.metrics.end(), metric) !=
         job.metrics.end();
}

// Analysis of one already-loaded series over the whole (m, tau) grid.
// Per-grid-point failures become error entries instead of aborting the batch.
nlohmann::json analyze_series(const TimeSeries& raw, const AnalysisJob& job,
                              bool* had_error) {
  nlohmann::json out;
  out["series"] = raw.provenance();
  out["length"] = raw.length();
  out["input_mean"] = raw.mean();
  const TimeSeries centered = center(raw);

  nlohmann::json results = nlohmann::json::array();
  for (const auto& [m, tau] : job.grid) {
    nlohmann::json item;
    item["m"] = m;
    item["tau"] = tau;
    EmbeddingConfig config{m, tau, job.options.tie_mode};
    try {
      if (wants(job, "tir")) {
        item["TIR"] = report_to_json(irreversibility(
            centered, config, Metric::TIR, job.options.method, job.options.sum_mode));
      }
      if (wants(job, "air")) {
        item["AIR"] = report_to_json(irreversibility(
            centered, config, Metric::AIR, job.options.method, job.options.sum_mode));
      }
      if (wants(job, "des")) {
        item["DES"] = des(centered, tau, job.options.tolerance);
      }
      item["distribution"] = pattern_distribution(centered, config).entries;
    } catch (const std::exception& e) {
      item["error"] = e.what();
      if (had_error != nullptr) *had_error = true;
    }
    results.push_back(std::move(item));
  }
  out["results"] = std::move(results);
  return out;
}

void flatten_csv(const nlohmann::json& doc, std::ostream& os) {
  os << "record,series,m,tau,metric,pattern,counterpart,p,q,value\n";
  if (!doc.contains("series")) return;
  for (const auto& series : doc["series"]) {
    const std::string name = series.value("series", "");
    for (const auto& item : series["results"]) {
      const int m = item["m"].get<int>();
      const int tau = item["tau"].get<int>();
      for (const char* metric : {"TIR", "AIR"}) {
        if (!item.contains(metric)) continue;
        const auto& report = item[metric];
        os << "total," << name << ',' << m << ',' << tau << ',' << metric
           << ",,,,," << format_value(report["total"].get<double>()) << '\n';
        for (const auto& pair : report["pairs"]) {
          os << "pair," << name << ',' << m << ',' << tau << ',' << metric << ','
             << pair["pattern"].get<std::string>() << ','
             << pair["counterpart"].get<std::string>() << ','
             << format_value(pair["p"].get<double>()) << ','
             << format_value(pair["q"].get<double>()) << ','
             << format_value(pair["contribution"].get<double>()) << '\n';
        }
      }
      if (item.contains("DES")) {
        os << "total," << name << ',' << m << ',' << tau << ",DES,,,,,"
           << format_value(item["DES"].get<double>()) << '\n';
      }
      if (item.contains("distribution")) {
        for (const auto& [key, prob] : item["distribution"].items()) {
          os << "probability," << name << ',' << m << ',' << tau << ",," << key
             << ",,,," << format_value(prob.get<double>()) << '\n';
        }
      }
    }
  }
}

void write_document(const AnalysisJob& job, const nlohmann::json& doc) {
  std::ostringstream body;
  if (job.options.format == "csv") {
    flatten_csv(doc, body);
  } else {
    body << doc.dump(2) << '\n';
  }
  if (job.out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(job.out_path);
    if (!out) throw config_error("cannot write output file: " + job.out_path);
    out << body.str();
  }
}

int run_generate(const AnalysisJob& job, nlohmann::json* report_out) {
  const TimeSeries series = generate(job.generator);
  std::ostringstream body;
  for (double v : series.samples()) body << format_value(v) << '\n';
  if (job.out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(job.out_path);
    if (!out) throw config_error("cannot write output file: " + job.out_path);
    out << body.str();
  }
  if (report_out != nullptr) {
    *report_out = {{"generated", series.provenance()}, {"length", series.length()}};
  }
  return kExitOk;
}

int run_analyze(const AnalysisJob& job, nlohmann::json* report_out) {
  if (job.inputs.empty()) throw config_error("analyze requires at least one input file");
  bool had_error = false;
  nlohmann::json doc;
  doc["job"] = job_echo(job);
  if (!job.options.no_timestamp) doc["timestamp"] = iso_timestamp();
  doc["series"] = nlohmann::json::array();
  doc["errors"] = nlohmann::json::array();
  for (const std::string& path : job.inputs) {
    try {
      for (const TimeSeries& s : load_series_file(path)) {
        doc["series"].push_back(analyze_series(s, job, &had_error));
      }
    } catch (const std::exception& e) {
      doc["errors"].push_back({{"input", path}, {"error", e.what()}});
      had_error = true;
    }
  }
  write_document(job, doc);
  if (report_out != nullptr) *report_out = std::move(doc);
  return had_error ? kExitPartial : kExitOk;
}

int run_surrogate_test(const AnalysisJob& job, nlohmann::json* report_out) {
  if (job.inputs.empty()) {
    throw config_error("surrogate-test requires at least one input file");
  }
  bool had_error = false;
  nlohmann::json doc;
  doc["job"] = job_echo(job);
  if (!job.options.no_timestamp) doc["timestamp"] = iso_timestamp();
  doc["series"] = nlohmann::json::array();
  doc["errors"] = nlohmann::json::array();
  for (const std::string& path : job.inputs) {
    try {
      for (const TimeSeries& raw : load_series_file(path)) {
        const TimeSeries centered = center(raw);
        nlohmann::json entry;
        entry["series"] = raw.provenance();
        entry["tests"] = nlohmann::json::array();
        for (const auto& [m, tau] : job.grid) {
          EmbeddingConfig config{m, tau, job.options.tie_mode};
          for (Metric kind : {Metric::TIR, Metric::AIR}) {
            if (!wants(job, kind == Metric::TIR ? "tir" : "air")) continue;
            try {
              auto result = surrogate_test(
                  centered, config, kind, job.options.n_surrogates,
                  job.options.master_seed, job.options.method, job.options.sum_mode);
              nlohmann::json t = surrogate_result_to_json(result);
              t["m"] = m;
              t["tau"] = tau;
              entry["tests"].push_back(std::move(t));
            } catch (const std::exception& e) {
              entry["tests"].push_back({{"m", m},
                                        {"tau", tau},
                                        {"metric", metric_name(kind)},
                                        {"error", e.what()}});
              had_error = true;
            }
          }
        }
        doc["series"].push_back(std::move(entry));
      }
    } catch (const std::exception& e) {
      doc["errors"].push_back({{"input", path}, {"error", e.what()}});
      had_error = true;
    }
  }
  write_document(job, doc);
  if (report_out != nullptr) *report_out = std::move(doc);
  return had_error ? kExitPartial : kExitOk;
}

int run_batch(const AnalysisJob& job, nlohmann::json* report_out) {
  if (job.inputs.empty()) throw config_error("batch requires at least one directory");
  bool had_error = false;
  nlohmann::json doc;
  doc["job"] = job_echo(job);
  if (!job.options.no_timestamp) doc["timestamp"] = iso_timestamp();
  doc["groups"] = nlohmann::json::array();
  doc["tests"] = nlohmann::json::array();
  doc["errors"] = nlohmann::json::array();

  // group -> (m,tau,metric key) -> per-series values
  std::map<std::string, std::map<std::string, std::vector<double>>> group_values;
  std::vector<std::string> group_names;

  for (const std::string& dir : job.inputs) {
    if (!fs::is_directory(dir)) throw config_error("not a directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    if (files.empty()) throw config_error("empty directory: " + dir);
    std::sort(files.begin(), files.end());

    const std::string group = fs::path(dir).filename().string();
    group_names.push_back(group);
    nlohmann::json group_doc;
    group_doc["group"] = group;
    group_doc["n_files"] = files.size();
    group_doc["series"] = nlohmann::json::array();

    for (const fs::path& file : files) {
      try {
        for (const TimeSeries& raw : load_series_file(file.string())) {
          const TimeSeries centered = center(raw);
          nlohmann::json entry;
          entry["series"] = file.filename().string();
          for (const auto& [m, tau] : job.grid) {
            EmbeddingConfig config{m, tau, job.options.tie_mode};
            std::ostringstream grid_key;
            grid_key << "m=" << m << ",tau=" << tau;
            try {
              nlohmann::json values;
              if (wants(job, "tir")) {
                const double v = irreversibility(centered, config, Metric::TIR,
                                                 job.options.method,
                                                 job.options.sum_mode)
                                     .total;
                values["TIR"] = v;
                group_values[group][grid_key.str() + ",TIR"].push_back(v);
              }
              if (wants(job, "air")) {
                const double v = irreversibility(centered, config, Metric::AIR,
                                                 job.options.method,
                                                 job.options.sum_mode)
                                     .total;
                values["AIR"] = v;
                group_values[group][grid_key.str() + ",AIR"].push_back(v);
              }
              if (wants(job, "des")) {
                const double v = des(centered, tau, job.options.tolerance);
                values["DES"] = v;
                group_values[group][grid_key.str() + ",DES"].push_back(v);
              }
              entry[grid_key.str()] = std::move(values);
            } catch (const std::exception& e) {
              entry[grid_key.str()] = {{"error", e.what()}};
              had_error = true;
            }
          }
          group_doc["series"].push_back(std::move(entry));
        }
      } catch (const std::exception& e) {
        doc["errors"].push_back({{"input", file.string()}, {"error", e.what()}});
        had_error = true;
      }
    }

    nlohmann::json summaries;
    for (const auto& [key, values] : group_values[group]) {
      if (values.size() >= 2) {
        const Summary s = summarize(values);
        summaries[key] = {{"mean", s.mean},
                          {"standard_error", s.standard_error},
                          {"n", s.n}};
      }
    }
    group_doc["summary"] = std::move(summaries);
    doc["groups"].push_back(std::move(group_doc));
  }

  // Pairwise Mann-Whitney between groups, per grid point and metric.
  for (std::size_t i = 0; i < group_names.size(); ++i) {
    for (std::size_t j = i + 1; j < group_names.size(); ++j) {
      const auto& lhs = group_values[group_names[i]];
      const auto& rhs = group_values[group_names[j]];
      for (const auto& [key, a] : lhs) {
        auto it = rhs.find(key);
        if (it == rhs.end() || a.empty() || it->second.empty()) continue;
        nlohmann::json t = test_result_to_json(mann_whitney_u(a, it->second));
        t["groups"] = {group_names[i], group_names[j]};
        t["metric"] = key;
        doc["tests"].push_back(std::move(t));
      }
    }
  }

  write_document(job, doc);
  if (report_out != nullptr) *report_out = std::move(doc);
  return had_error ? kExitPartial : kExitOk;
}

int run_compare(const AnalysisJob& job, nlohmann::json* report_out) {
  if (job.inputs.size() != 2) {
    throw config_error("compare requires exactly two input files of values");
  }
  auto load_values = [](const std::string& path) {
    auto series = load_series_file(path);
    if (series.empty()) throw config_error("no values in " + path);
    return series.front().samples();
  };
  const auto a = load_values(job.inputs[0]);
  const auto b = load_values(job.inputs[1]);

  const TestResult result = job.compare_test == StatMethod::mann_whitney_u
                                ? mann_whitney_u(a, b)
                                : wilcoxon_signed_rank(a, b);
  nlohmann::json doc;
  if (!job.options.no_timestamp) doc["timestamp"] = iso_timestamp();
  doc["inputs"] = job.inputs;
  doc["test"] = test_result_to_json(result);
  write_document(job, doc);
  if (report_out != nullptr) *report_out = std::move(doc);
  return kExitOk;
}

}  // namespace

std::vector<TimeSeries> load_series_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot read input file: " + path);

  std::string first;
  std::size_t line_no = 0;
  while (std::getline(in, first)) {
    ++line_no;
    if (!trim(first).empty()) break;
    first.clear();
  }
  if (trim(first).empty()) throw std::domain_error(path + ": no data");

  double value = 0.0;
  const bool plain = parse_double(trim(first), &value);
  if (plain) {
    std::vector<double> samples{value};
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      const std::string token = trim(line);
      if (token.empty()) continue;
      if (!parse_double(token, &value)) {
        std::ostringstream msg;
        msg << path << ":" << line_no << ": malformed numeric value '" << token << "'";
        throw std::domain_error(msg.str());
      }
      samples.push_back(value);
    }
    return {TimeSeries(std::move(samples), path)};
  }

  // Single-header CSV, one series per column.
  const auto header = split_csv_row(first);
  std::vector<std::vector<double>> columns(header.size());
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_csv_row(line);
    if (cells.size() != header.size()) {
      std::ostringstream msg;
      msg << path << ":" << line_no << ": expected " << header.size()
          << " columns, got " << cells.size();
      throw std::domain_error(msg.str());
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!parse_double(cells[c], &value)) {
        std::ostringstream msg;
        msg << path << ":" << line_no << ": malformed numeric value '" << cells[c]
            << "'";
        throw std::domain_error(msg.str());
      }
      columns[c].push_back(value);
    }
  }
  std::vector<TimeSeries> series;
  for (std::size_t c = 0; c < header.size(); ++c) {
    series.emplace_back(std::move(columns[c]), path + ":" + header[c]);
  }
  return series;
}

nlohmann::json report_to_json(const IrrevReport& report) {
  auto pair_list = [](const std::vector<PairEntry>& pairs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const PairEntry& e : pairs) {
      arr.push_back({{"pattern", e.pattern},
                     {"counterpart", e.counterpart},
                     {"p", e.p},
                     {"q", e.q},
                     {"contribution", e.contribution}});
    }
    return arr;
  };
  return {{"kind", metric_name(report.kind)},
          {"total", report.total},
          {"method", method_name(report.method)},
          {"sum_mode", sum_mode_name(report.sum_mode)},
          {"window_count", report.window_count},
          {"short_series_warning", report.short_series_warning},
          {"pairs", pair_list(report.pairs)},
          {"forbidden_pairs", pair_list(report.forbidden_pairs)},
          {"single_patterns", pair_list(report.single_patterns)}};
}

nlohmann::json surrogate_result_to_json(const SurrogateTestResult& result) {
  return {{"metric", metric_name(result.metric_kind)},
          {"original_value", result.original_value},
          {"p2_5", result.p2_5},
          {"p97_5", result.p97_5},
          {"verdict", verdict_name(result.verdict)},
          {"n_surrogates", result.n_surrogates},
          {"master_seed", result.master_seed},
          {"surrogate_values", result.surrogate_values}};
}

nlohmann::json test_result_to_json(const TestResult& result) {
  return {{"method", result.method == StatMethod::mann_whitney_u
                         ? "mann_whitney_u"
                         : "wilcoxon_signed_rank"},
          {"statistic", result.statistic},
          {"p_value", result.p_value},
          {"n1", result.n1},
          {"n2", result.n2},
          {"tie_correction_applied", result.tie_correction_applied}};
}

int run_job(const AnalysisJob& job, nlohmann::json* report_out) {
  switch (job.mode) {
    case AnalysisJob::Mode::generate:
      return run_generate(job, report_out);
    case AnalysisJob::Mode::analyze:
      return run_analyze(job, report_out);
    case AnalysisJob::Mode::surrogate_test:
      return run_surrogate_test(job, report_out);
    case AnalysisJob::Mode::batch:
      return run_batch(job, report_out);
    case AnalysisJob::Mode::compare:
      return run_compare(job, report_out);
  }
  throw config_error("unknown job mode");
}

}  // namespace jpirrev
