#include "fibnet/problems.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "fibnet/errors.hpp"

namespace fibnet {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<std::size_t> to_size(std::string_view s) {
  s = trim(s);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<double> to_double_list(std::string_view s, std::size_t line, std::string_view key) {
  std::vector<double> out;
  while (true) {
    const auto comma = s.find(',');
    const auto item = s.substr(0, comma);
    const auto v = to_double(item);
    if (!v) {
      throw FormatError(line, "'" + std::string(key) + "' expects comma-separated numbers, got '" +
                                  std::string(trim(item)) + "'");
    }
    out.push_back(*v);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_double(values[i]);
  }
  return out;
}

Expr parse_on_line(std::string_view text, std::size_t line) {
  try {
    return parse(text);
  } catch (const SyntaxError& e) {
    throw FormatError(line, e.what());
  }
}

std::vector<double> tenths(int first, int last) {
  std::vector<double> out;
  for (int k = first; k <= last; ++k) out.push_back(k / 10.0);
  return out;
}

Benchmark make(std::string label, std::vector<double> orders, const std::string& rhs,
               std::vector<InitialCondition> ics, std::optional<std::string> exact,
               std::size_t n, int iterations, std::vector<double> report_grid) {
  Benchmark b;
  for (double a : orders) b.spec.orders.emplace_back(a);
  b.spec.rhs = parse(rhs);
  b.spec.ics = std::move(ics);
  b.spec.domain = {0.0, 1.0};
  b.spec.num_points = 10;
  b.spec.basis_size = n;
  if (exact) b.exact = parse(*exact);
  b.label = std::move(label);
  b.reference_iterations = iterations;
  b.recommended_n = n;
  b.report_grid = std::move(report_grid);
  b.spec.validate();
  return b;
}

}  // namespace

bool builtin_takes_alpha(int id) { return id == 1 || id == 4 || id == 5; }

Benchmark builtin(int id, std::optional<double> alpha) {
  if (id < 1 || id > kNumBuiltins) {
    throw ValidationError("unknown example " + std::to_string(id) + " (expected 1..5)");
  }
  if ((id == 1 || id == 4) && !alpha) {
    throw ValidationError("example " + std::to_string(id) + " requires alpha in (0, 1]");
  }
  if ((id == 1 || id == 4) && !(*alpha > 0.0 && *alpha <= 1.0)) {
    throw ValidationError("example " + std::to_string(id) + " requires 0 < alpha <= 1");
  }
  if (id == 5 && !alpha) alpha = 1.5;
  if (id == 5 && !(*alpha > 0.0 && *alpha < 2.0)) {
    throw ValidationError("example 5 requires 0 < alpha < 2");
  }

  const std::string a = alpha ? format_double(*alpha) : "";
  const std::string suffix = alpha ? "_alpha" + a : "";
  switch (id) {
    case 1:
      return make("example1" + suffix, {*alpha},
                  "x^2 + 2*x^(2 - " + a + ")/gamma(3 - " + a + ") - y", {{0, 0.0}}, "x^2", 3,
                  18, tenths(1, 9));
    case 2:
      return make("example2", {0.5, 2.0}, "x^3 + 6*x + 3.2/gamma(0.5)*x^2.5 - d1 - y",
                  {{0, 0.0}, {1, 0.0}}, "x^3", 4, 17, tenths(0, 10));
    case 3:
      return make("example3", {0.75, 1.25, 2.2},
                  "2*x^0.8/gamma(1.8) + 2*x^2.25/gamma(3.25) + 2*x^1.75/gamma(2.75) + x^9/27"
                  " - d1 - d2 - y^3",
                  {{0, 0.0}, {1, 0.0}, {2, 0.0}}, "x^3/3", 4, 16, tenths(1, 9));
    case 4:
      return make("example4" + suffix, {*alpha},
                  "1 - 4*x + 5*x^2 - 4/gamma(2 - " + a + ")*x^(1 - " + a + ") + 10/gamma(3 - " +
                      a + ")*x^(2 - " + a + ") - y",
                  {{0, 1.0}}, "1 - 4*x + 5*x^2", 3, 28, tenths(1, 9));
    default:
      return make("example5" + suffix, {*alpha, 2.0}, "2 + 4*sqrt(x/pi) + x^2 - d1 - y",
                  {{0, 0.0}, {1, 0.0}},
                  *alpha == 1.5 ? std::optional<std::string>("x^2") : std::nullopt, 4, 16,
                  tenths(0, 10));
  }
}

Benchmark load_problem(std::string_view text) {
  Benchmark b;
  b.label = "problem";
  std::map<std::string, std::size_t> seen;
  bool have_orders = false;
  bool have_rhs = false;
  bool have_basis = false;
  std::size_t line_no = 0;

  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw FormatError(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (value.empty()) throw FormatError(line_no, "missing value for '" + key + "'");

    if (key.rfind("ic", 0) == 0 && key.size() > 2 && (key[2] == ' ' || key[2] == '\t')) {
      const auto k = to_size(std::string_view(key).substr(3));
      if (!k) throw FormatError(line_no, "malformed initial condition index in '" + key + "'");
      const auto v = to_double(value);
      if (!v) throw FormatError(line_no, "initial condition value must be a number");
      b.spec.ics.push_back({*k, *v});
      continue;
    }

    if (auto [it, inserted] = seen.emplace(key, line_no); !inserted) {
      throw FormatError(line_no, "duplicate key '" + key + "' (first on line " +
                                     std::to_string(it->second) + ")");
    }

    if (key == "name") {
      b.label = std::string(value);
    } else if (key == "orders") {
      b.spec.orders.clear();
      for (double a : to_double_list(value, line_no, key)) {
        if (!(a > 0.0)) throw FormatError(line_no, "orders must be positive");
        b.spec.orders.emplace_back(a);
      }
      have_orders = true;
    } else if (key == "rhs") {
      b.spec.rhs = parse_on_line(value, line_no);
      have_rhs = true;
    } else if (key == "exact") {
      b.exact = parse_on_line(value, line_no);
    } else if (key == "domain") {
      const auto d = to_double_list(value, line_no, key);
      if (d.size() != 2) throw FormatError(line_no, "domain expects two numbers 'a, b'");
      b.spec.domain = {d[0], d[1]};
    } else if (key == "points") {
      const auto p = to_size(value);
      if (!p) throw FormatError(line_no, "points expects a non-negative integer");
      b.spec.num_points = *p;
    } else if (key == "basis") {
      const auto n = to_size(value);
      if (!n) throw FormatError(line_no, "basis expects a non-negative integer");
      b.spec.basis_size = *n;
      have_basis = true;
    } else if (key == "grid") {
      b.spec.grid = to_double_list(value, line_no, key);
    } else {
      throw FormatError(line_no, "unknown key '" + key + "'");
    }
  }

  if (!have_orders) throw ValidationError("missing required key 'orders'");
  if (!have_rhs) throw ValidationError("missing required key 'rhs'");
  if (!have_basis) throw ValidationError("missing required key 'basis'");
  if (!b.spec.grid.empty() && !seen.contains("points")) b.spec.num_points = b.spec.grid.size();
  b.spec.validate();

  b.recommended_n = b.spec.basis_size;
  b.report_grid = uniform_grid(b.spec.domain.a, b.spec.domain.b, 11);
  return b;
}

std::string to_problem_file(const Benchmark& bench) {
  std::ostringstream out;
  const ProblemSpec& s = bench.spec;
  out << "name = " << bench.label << '\n';
  std::vector<double> orders;
  for (const auto& o : s.orders) orders.push_back(o.value());
  out << "orders = " << join(orders) << '\n';
  out << "rhs = " << to_string(s.rhs) << '\n';
  for (const auto& ic : s.ics) out << "ic " << ic.k << " = " << format_double(ic.value) << '\n';
  out << "domain = " << format_double(s.domain.a) << ", " << format_double(s.domain.b) << '\n';
  out << "points = " << s.num_points << '\n';
  if (!s.grid.empty()) out << "grid = " << join(s.grid) << '\n';
  out << "basis = " << s.basis_size << '\n';
  if (bench.exact) out << "exact = " << to_string(*bench.exact) << '\n';
  return out.str();
}

double eval_at(const Expr& e, double x) {
  Env env;
  env.set("x", x);
  env.set("t", x);
  return eval(e, env);
}

std::vector<ErrorRow> error_table(const Network& net, const std::optional<Expr>& exact,
                                  const std::vector<double>& grid) {
  std::vector<ErrorRow> rows;
  rows.reserve(grid.size());
  for (double t : grid) {
    if (!(t >= 0.0)) throw DomainError("report grid points must be >= 0");
    ErrorRow row;
    row.t = t;
    row.numerical = evaluate(net, t);
    if (exact) {
      row.exact = eval_at(*exact, t);
      row.abs_error = std::abs(row.numerical - *row.exact);
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> uniform_grid(double a, double b, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {a};
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1);
  }
  return out;
}

}  // namespace fibnet
