#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibnet/basis.hpp"
#include "fibnet/errors.hpp"
#include "fibnet/expr.hpp"
#include "fibnet/gamma.hpp"
#include "fibnet/optimizer.hpp"
#include "fibnet/problems.hpp"

namespace py = pybind11;

namespace {

std::vector<std::pair<double, double>> terms_of(const fibnet::FracSeries& s) {
  std::vector<std::pair<double, double>> out;
  for (const auto& t : s.terms()) out.emplace_back(t.coef, t.exponent);
  return out;
}

fibnet::Env env_from(const std::map<std::string, double>& vars) {
  fibnet::Env env;
  for (const auto& [k, v] : vars) env.set(k, v);
  return env;
}

py::list rows_to_py(const std::vector<fibnet::ErrorRow>& rows) {
  py::list out;
  for (const auto& r : rows) {
    py::dict d;
    d["t"] = r.t;
    d["numerical"] = r.numerical;
    if (r.exact) d["exact"] = *r.exact;
    if (r.abs_error) d["abs_error"] = *r.abs_error;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_fibnet, m) {
  m.doc() = "Fibonacci-network solver for fractional differential equations.";

  static py::exception<fibnet::Error> fibnet_error(m, "FibnetError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const fibnet::Error& e) {
      py::set_error(fibnet_error, e.what());
    }
  });

  m.def("gamma", &fibnet::gamma, py::arg("x"), "Gamma function.");
  m.def(
      "fibonacci", [](std::size_t i) { return fibnet::fibonacci(i).coeffs(); }, py::arg("m"),
      "Coefficients of F_m in ascending degree order.");
  m.def(
      "caputo_deriv_poly",
      [](std::vector<double> coeffs, double alpha) {
        return terms_of(fibnet::caputo_deriv_poly(fibnet::Polynomial(std::move(coeffs)),
                                                  fibnet::FractionalOrder(alpha)));
      },
      py::arg("coeffs"), py::arg("alpha"),
      "Caputo derivative of a polynomial as (coef, exponent) pairs.");
  m.def(
      "caputo_deriv_fib",
      [](std::size_t i, double alpha) {
        return terms_of(fibnet::caputo_deriv_fib(i, fibnet::FractionalOrder(alpha)));
      },
      py::arg("i"), py::arg("alpha"));

  py::class_<fibnet::Expr>(m, "Expr")
      .def("__str__", [](const fibnet::Expr& e) { return fibnet::to_string(e); })
      .def("__repr__", [](const fibnet::Expr& e) { return "Expr('" + fibnet::to_string(e) + "')"; })
      .def(
          "eval",
          [](const fibnet::Expr& e, const std::map<std::string, double>& vars) {
            return fibnet::eval(e, env_from(vars));
          },
          py::arg("env") = std::map<std::string, double>{})
      .def("diff", [](const fibnet::Expr& e, const std::string& var) { return fibnet::diff(e, var); })
      .def_property_readonly("variables", &fibnet::Expr::variables);

  m.def("parse", &fibnet::parse, py::arg("text"));
  m.def(
      "eval_expr",
      [](const std::string& text, const std::map<std::string, double>& vars) {
        return fibnet::eval(fibnet::parse(text), env_from(vars));
      },
      py::arg("text"), py::arg("env") = std::map<std::string, double>{});

  py::class_<fibnet::Benchmark>(m, "Benchmark")
      .def_readonly("label", &fibnet::Benchmark::label)
      .def_readonly("exact", &fibnet::Benchmark::exact)
      .def_readonly("reference_iterations", &fibnet::Benchmark::reference_iterations)
      .def_readonly("recommended_n", &fibnet::Benchmark::recommended_n)
      .def_readonly("report_grid", &fibnet::Benchmark::report_grid)
      .def_property_readonly("orders",
                             [](const fibnet::Benchmark& b) {
                               std::vector<double> out;
                               for (const auto& o : b.spec.orders) out.push_back(o.value());
                               return out;
                             })
      .def_property_readonly("rhs", [](const fibnet::Benchmark& b) { return b.spec.rhs; })
      .def_property_readonly(
          "ics",
          [](const fibnet::Benchmark& b) {
            std::vector<std::pair<std::size_t, double>> out;
            for (const auto& ic : b.spec.ics) out.emplace_back(ic.k, ic.value);
            return out;
          })
      .def_property_readonly("basis_size",
                             [](const fibnet::Benchmark& b) { return b.spec.basis_size; })
      .def_property_readonly("num_points",
                             [](const fibnet::Benchmark& b) { return b.spec.num_points; })
      .def_property_readonly("training_points",
                             [](const fibnet::Benchmark& b) { return b.spec.training_points(); });

  m.def("builtin", &fibnet::builtin, py::arg("example"), py::arg("alpha") = py::none());
  m.def("load_problem", &fibnet::load_problem, py::arg("text"));
  m.def("to_problem_file", &fibnet::to_problem_file, py::arg("benchmark"));

  py::class_<fibnet::TrainConfig>(m, "TrainConfig")
      .def(py::init<>())
      .def_readwrite("lambda0", &fibnet::TrainConfig::lambda0)
      .def_readwrite("max_iter", &fibnet::TrainConfig::max_iter)
      .def_readwrite("tol", &fibnet::TrainConfig::tol)
      .def_readwrite("decrease_factor", &fibnet::TrainConfig::decrease_factor)
      .def_readwrite("increase_factor", &fibnet::TrainConfig::increase_factor)
      .def_readwrite("max_inner_retries", &fibnet::TrainConfig::max_inner_retries)
      .def_readwrite("seed", &fibnet::TrainConfig::seed);

  py::class_<fibnet::TrainReport>(m, "TrainReport")
      .def_readonly("iterations", &fibnet::TrainReport::iterations)
      .def_readonly("final_cost", &fibnet::TrainReport::final_cost)
      .def_readonly("converged", &fibnet::TrainReport::converged)
      .def_readonly("cost_history", &fibnet::TrainReport::cost_history)
      .def_readonly("final_lambda", &fibnet::TrainReport::final_lambda)
      .def_property_readonly("termination_reason", [](const fibnet::TrainReport& r) {
        return fibnet::to_string(r.termination_reason);
      });

  m.def(
      "solve",
      [](const fibnet::Benchmark& bench, const fibnet::TrainConfig& config) {
        std::optional<fibnet::TrainResult> result;
        {
          py::gil_scoped_release release;
          result.emplace(fibnet::train(bench.spec, config));
        }
        return std::make_pair(result->network.weights(), result->report);
      },
      py::arg("benchmark"), py::arg("config") = fibnet::TrainConfig{},
      "Train the network; returns (weights, report).");

  m.def(
      "error_table",
      [](const std::vector<double>& weights, const std::optional<fibnet::Expr>& exact,
         const std::vector<double>& grid) {
        return rows_to_py(fibnet::error_table(fibnet::Network(weights), exact, grid));
      },
      py::arg("weights"), py::arg("exact"), py::arg("grid"));
}
