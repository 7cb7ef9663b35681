#pragma once

// Command-line front end: `benchmark`, `solve` and `sweep`.
//
// Exit codes: 0 success, 1 usage / I/O / parse failure, 2 no convergence.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fibnet/optimizer.hpp"
#include "fibnet/problems.hpp"

namespace fibnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNoConvergence = 2;

/// Everything needed to reproduce a run.
struct RunRecord {
  std::string label;
  std::string command;         // "benchmark" or "solve"
  std::optional<int> example;  // benchmark only
  std::optional<double> alpha;
  std::string problem_file;    // solve only
  TrainConfig config;
  ProblemSpec spec;
  std::vector<double> report_grid;
  std::vector<double> weights;
  TrainReport report;
  std::vector<ErrorRow> rows;
  double wall_clock_ms = 0.0;

  std::optional<double> max_abs_error() const;
  /// Flags that reproduce this run when passed back to the CLI.
  std::vector<std::string> reproduce_args() const;
};

/// CSV text with header `t,numerical,exact,abs_error` (or `t,numerical`
/// when no row has an exact value). Doubles use shortest round-trip form.
std::string errors_csv(const std::vector<ErrorRow>& rows);

/// JSON report for one run (pretty-printed).
std::string report_json(const RunRecord& record);

/// Trains `bench` and fills a RunRecord (no files are written).
RunRecord run(const Benchmark& bench, const TrainConfig& config,
              const std::vector<double>& report_grid);

/// Writes `<out>/<label>_errors.csv` and `<out>/<label>_report.json`.
/// Throws std::runtime_error on I/O failure.
void write_outputs(const RunRecord& record, const std::filesystem::path& out_dir);

/// Exit code for a finished run.
int exit_code(const TrainReport& report);

/// Entry point; `args` excludes the program name.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fibnet::cli
