#include "fibnet/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "fibnet/errors.hpp"

namespace fibnet::cli {
namespace {

using nlohmann::json;

struct CommonOptions {
  std::uint64_t seed = 42;
  std::optional<std::size_t> points;
  std::optional<std::size_t> basis;
  std::size_t max_iter = 200;
  double tol = 1e-24;
  double lambda0 = 1e4;
  double decrease_factor = 4.0;
  double increase_factor = 2.0;
  std::size_t max_retries = 60;
  std::string out = "out";
  std::vector<double> grid;
};

void add_common(CLI::App& cmd, CommonOptions& o) {
  cmd.add_option("--seed", o.seed, "Seed for the initial weights")->capture_default_str();
  cmd.add_option("--points", o.points, "Number of training points");
  cmd.add_option("--basis", o.basis, "Number of Fibonacci basis members");
  cmd.add_option("--max-iter", o.max_iter, "Maximum accepted iterations")->capture_default_str();
  cmd.add_option("--tol", o.tol, "Stop once the cost falls below this value")
      ->capture_default_str();
  cmd.add_option("--lambda0", o.lambda0, "Initial damping")->capture_default_str();
  cmd.add_option("--decrease-factor", o.decrease_factor, "Damping divisor on accepted steps")
      ->capture_default_str();
  cmd.add_option("--increase-factor", o.increase_factor, "Damping multiplier on rejected steps")
      ->capture_default_str();
  cmd.add_option("--max-retries", o.max_retries, "Consecutive rejections before giving up")
      ->capture_default_str();
  cmd.add_option("--out", o.out, "Output directory")->capture_default_str();
  cmd.add_option("--grid", o.grid, "Report grid, comma separated")->delimiter(',');
}

TrainConfig config_from(const CommonOptions& o) {
  TrainConfig c;
  c.seed = o.seed;
  c.max_iter = o.max_iter;
  c.tol = o.tol;
  c.lambda0 = o.lambda0;
  c.decrease_factor = o.decrease_factor;
  c.increase_factor = o.increase_factor;
  c.max_inner_retries = o.max_retries;
  return c;
}

void apply_overrides(Benchmark& bench, const CommonOptions& o) {
  if (o.points) {
    bench.spec.num_points = *o.points;
    bench.spec.grid.clear();
  }
  if (o.basis) bench.spec.basis_size = *o.basis;
  bench.spec.validate();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ',';
    s += format_double(v[i]);
  }
  return s;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void print_summary(const RunRecord& r, std::ostream& out) {
  out << r.label << ": iterations=" << r.report.iterations
      << " final_cost=" << format_double(r.report.final_cost)
      << " termination=" << to_string(r.report.termination_reason);
  if (const auto m = r.max_abs_error()) out << " max_abs_error=" << format_double(*m);
  out << '\n';
}

// Runs one benchmark/problem end to end and returns its exit code.
int run_and_write(RunRecord record_template, const Benchmark& bench, const CommonOptions& o,
                  std::ostream& out, std::ostream& err, RunRecord* result = nullptr) {
  const std::vector<double> grid = o.grid.empty() ? bench.report_grid : o.grid;
  RunRecord r = run(bench, config_from(o), grid);
  r.command = record_template.command;
  r.example = record_template.example;
  r.alpha = record_template.alpha;
  r.problem_file = record_template.problem_file;
  try {
    write_outputs(r, o.out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  print_summary(r, out);
  if (result) *result = r;
  return exit_code(r.report);
}

}  // namespace

std::optional<double> RunRecord::max_abs_error() const {
  std::optional<double> m;
  for (const ErrorRow& row : rows) {
    if (row.abs_error) m = std::max(m.value_or(0.0), *row.abs_error);
  }
  return m;
}

std::vector<std::string> RunRecord::reproduce_args() const {
  std::vector<std::string> a = {command};
  if (command == "benchmark") {
    a.insert(a.end(), {"--example", std::to_string(example.value_or(0))});
    if (alpha) a.insert(a.end(), {"--alpha", format_double(*alpha)});
  } else {
    a.push_back(problem_file);
  }
  a.insert(a.end(), {"--seed", std::to_string(config.seed), "--points",
                     std::to_string(spec.num_points), "--basis", std::to_string(spec.basis_size),
                     "--max-iter", std::to_string(config.max_iter), "--tol",
                     format_double(config.tol), "--lambda0", format_double(config.lambda0),
                     "--decrease-factor", format_double(config.decrease_factor),
                     "--increase-factor", format_double(config.increase_factor),
                     "--max-retries", std::to_string(config.max_inner_retries)});
  if (!report_grid.empty()) a.insert(a.end(), {"--grid", join(report_grid)});
  return a;
}

std::string errors_csv(const std::vector<ErrorRow>& rows) {
  const bool with_exact =
      std::any_of(rows.begin(), rows.end(), [](const ErrorRow& r) { return r.exact.has_value(); });
  std::string s = with_exact ? "t,numerical,exact,abs_error\n" : "t,numerical\n";
  for (const ErrorRow& r : rows) {
    s += format_double(r.t) + ',' + format_double(r.numerical);
    if (with_exact) {
      s += ',' + (r.exact ? format_double(*r.exact) : std::string()) + ',' +
           (r.abs_error ? format_double(*r.abs_error) : std::string());
    }
    s += '\n';
  }
  return s;
}

std::string report_json(const RunRecord& r) {
  json cfg = {
      {"seed", r.config.seed},
      {"lambda0", r.config.lambda0},
      {"max_iter", r.config.max_iter},
      {"tol", r.config.tol},
      {"decrease_factor", r.config.decrease_factor},
      {"increase_factor", r.config.increase_factor},
      {"max_inner_retries", r.config.max_inner_retries},
      {"points", r.spec.num_points},
      {"basis", r.spec.basis_size},
      {"domain", {r.spec.domain.a, r.spec.domain.b}},
      {"training_grid", r.spec.training_points()},
      {"report_grid", r.report_grid},
  };
  if (r.example) cfg["example"] = *r.example;
  if (r.alpha) cfg["alpha"] = *r.alpha;
  if (!r.problem_file.empty()) cfg["problem_file"] = r.problem_file;

  json history = json::array();
  for (double c : r.report.cost_history) history.push_back(finite_or_null(c));

  json rows = json::array();
  for (const ErrorRow& row : r.rows) {
    json j = {{"t", row.t}, {"numerical", finite_or_null(row.numerical)}};
    if (row.exact) j["exact"] = finite_or_null(*row.exact);
    if (row.abs_error) j["abs_error"] = finite_or_null(*row.abs_error);
    rows.push_back(std::move(j));
  }

  json doc = {
      {"label", r.label},
      {"command", r.command},
      {"config", cfg},
      {"reproduce", r.reproduce_args()},
      {"report",
       {{"iterations", r.report.iterations},
        {"final_cost", finite_or_null(r.report.final_cost)},
        {"converged", r.report.converged},
        {"termination_reason", to_string(r.report.termination_reason)},
        {"final_lambda", finite_or_null(r.report.final_lambda)},
        {"cost_history", history}}},
      {"weights", r.weights},
      {"errors", rows},
      {"wall_clock_ms", r.wall_clock_ms},
  };
  if (const auto m = r.max_abs_error()) doc["max_abs_error"] = finite_or_null(*m);
  return doc.dump(2) + "\n";
}

RunRecord run(const Benchmark& bench, const TrainConfig& config,
              const std::vector<double>& report_grid) {
  const auto start = std::chrono::steady_clock::now();
  TrainResult result = train(bench.spec, config);
  RunRecord r;
  r.label = bench.label;
  r.config = config;
  r.spec = bench.spec;
  r.report_grid = report_grid;
  r.rows = error_table(result.network, bench.exact, report_grid);
  r.weights = result.network.weights();
  r.report = std::move(result.report);
  r.wall_clock_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

void write_outputs(const RunRecord& record, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + out_dir.string() + "': " + ec.message());
  write_file(out_dir / (record.label + "_errors.csv"), errors_csv(record.rows));
  write_file(out_dir / (record.label + "_report.json"), report_json(record));
}

int exit_code(const TrainReport& report) {
  return report.converged ? kExitOk : kExitNoConvergence;
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fibonacci-network solver for fractional differential equations", "fibnet"};
  app.require_subcommand(1);

  CommonOptions bench_opts;
  int bench_example = 0;
  std::optional<double> bench_alpha;
  auto* bench_cmd = app.add_subcommand("benchmark", "Run one of the built-in examples");
  bench_cmd->add_option("--example", bench_example, "Example number (1-5)")->required();
  bench_cmd->add_option("--alpha", bench_alpha, "Fractional order for examples 1, 4 and 5");
  add_common(*bench_cmd, bench_opts);

  CommonOptions solve_opts;
  std::string solve_file;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a problem file");
  solve_cmd->add_option("file", solve_file, "Problem file")->required();
  add_common(*solve_cmd, solve_opts);

  CommonOptions sweep_opts;
  int sweep_example = 0;
  std::vector<double> sweep_alphas;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run example 1 or 4 for several alphas");
  sweep_cmd->add_option("--example", sweep_example, "Example number (1 or 4)")->required();
  sweep_cmd->add_option("--alphas", sweep_alphas, "Comma-separated orders")
      ->delimiter(',')
      ->required();
  add_common(*sweep_cmd, sweep_opts);

  std::vector<std::string> argv_store = {"fibnet"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*bench_cmd) {
      Benchmark bench = builtin(bench_example, bench_alpha);
      apply_overrides(bench, bench_opts);
      RunRecord tmpl;
      tmpl.command = "benchmark";
      tmpl.example = bench_example;
      tmpl.alpha = builtin_takes_alpha(bench_example)
                       ? std::optional<double>(bench_alpha.value_or(1.5))
                       : std::nullopt;
      return run_and_write(tmpl, bench, bench_opts, out, err);
    }

    if (*solve_cmd) {
      Benchmark bench;
      try {
        bench = load_problem(read_file(solve_file));
      } catch (const Error& e) {
        err << "error: " << solve_file << ": " << e.what() << '\n';
        return kExitUsage;
      }
      apply_overrides(bench, solve_opts);
      RunRecord tmpl;
      tmpl.command = "solve";
      tmpl.problem_file = solve_file;
      return run_and_write(tmpl, bench, solve_opts, out, err);
    }

    if (*sweep_cmd) {
      if (sweep_example != 1 && sweep_example != 4) {
        err << "usage error: sweep supports --example 1 or 4\n";
        return kExitUsage;
      }
      if (sweep_alphas.empty()) {
        err << "usage error: --alphas needs at least one value\n";
        return kExitUsage;
      }
      int worst = kExitOk;
      std::string combined = "alpha,t,abs_error\n";
      for (double alpha : sweep_alphas) {
        try {
          Benchmark bench = builtin(sweep_example, alpha);
          apply_overrides(bench, sweep_opts);
          RunRecord tmpl;
          tmpl.command = "benchmark";
          tmpl.example = sweep_example;
          tmpl.alpha = alpha;
          RunRecord rec;
          const int code = run_and_write(tmpl, bench, sweep_opts, out, err, &rec);
          worst = std::max(worst, code);
          for (const ErrorRow& row : rec.rows) {
            if (!row.abs_error) continue;
            combined += format_double(alpha) + ',' + format_double(row.t) + ',' +
                        format_double(*row.abs_error) + '\n';
          }
        } catch (const std::exception& e) {
          err << "error: alpha " << format_double(alpha) << ": " << e.what() << '\n';
          worst = std::max(worst, kExitUsage);
        }
      }
      try {
        write_file(std::filesystem::path(sweep_opts.out) /
                       ("example" + std::to_string(sweep_example) + "_sweep.csv"),
                   combined);
      } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        worst = std::max(worst, kExitUsage);
      }
      return worst;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace fibnet::cli
