#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "g235/commands.hpp"
#include "g235/g2.hpp"
#include "g235/symbolic.hpp"

namespace py = pybind11;
using namespace g235;

namespace {

Point to_point(const std::vector<double>& v) {
  if (v.size() != kDim) throw InputError("a point needs 5 coordinates, got " + std::to_string(v.size()));
  Point p;
  std::copy(v.begin(), v.end(), p.begin());
  return p;
}

/// An expression together with the chart it was parsed on.
struct PyExpr {
  Expr e;
  Chart chart;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "generic rank-2 distributions in dimension five: symbolic core and commands";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<UnknownIdentifier>(m, "UnknownIdentifier", base);
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<DegeneracyError>(m, "DegeneracyError", base);
  py::register_exception<InputError>(m, "InputError", base);
  py::register_exception<ChartMismatch>(m, "ChartMismatch", base);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", base);
  py::register_exception<ClosureError>(m, "ClosureError", base);

  py::class_<PyExpr>(m, "Expr")
      .def("evaluate", [](const PyExpr& x, const std::vector<double>& p) { return evaluate(x.e, to_point(p)); })
      .def("diff", [](const PyExpr& x, const std::string& var) {
        return PyExpr{simplify_basic(differentiate(x.e, var, x.chart)), x.chart};
      })
      .def("simplify", [](const PyExpr& x) { return PyExpr{simplify_basic(x.e), x.chart}; })
      .def("__str__", [](const PyExpr& x) { return to_string(x.e, x.chart); })
      .def("__repr__", [](const PyExpr& x) { return "Expr('" + to_string(x.e, x.chart) + "')"; })
      .def("__eq__", [](const PyExpr& a, const PyExpr& b) { return a.e.id() == b.e.id() && a.chart == b.chart; })
      .def("__hash__", [](const PyExpr& x) { return x.e.id(); });

  m.def(
      "parse",
      [](const std::string& text, const std::vector<std::string>& names) {
        Chart c(names);
        return PyExpr{parse_expression(text, c), c};
      },
      py::arg("text"), py::arg("names") = std::vector<std::string>{"x", "y", "p", "q", "z"});

  m.def(
      "run",
      [](const std::string& command, const std::string& problem, std::optional<std::uint64_t> seed,
         std::optional<double> tol, const std::vector<std::string>& mutate,
         std::optional<std::vector<double>> point) {
        CommandOptions opt;
        opt.seed = seed;
        opt.tol = tol;
        for (const auto& a : mutate) apply_mutation(opt.constants, a);
        if (point) opt.point = to_point(*point);
        CommandResult r;
        {
          py::gil_scoped_release release;
          r = run_command(command, [&] { return parse_problem(problem); }, opt);
        }
        return py::make_tuple(r.status, r.json, r.summary);
      },
      py::arg("command"), py::arg("problem") = "", py::arg("seed") = py::none(), py::arg("tol") = py::none(),
      py::arg("mutate") = std::vector<std::string>{}, py::arg("point") = py::none(),
      "Runs a command on problem-file text; returns (status, json, summary).");

  m.def("constants", [] {
    Constants k;
    py::dict out;
    for (const auto& key : Constants::keys()) out[py::str(key)] = k.get(key).get_str();
    return out;
  });

  m.attr("EXIT_PASS") = static_cast<int>(kExitPass);
  m.attr("EXIT_FAIL") = static_cast<int>(kExitFail);
  m.attr("EXIT_INPUT") = static_cast<int>(kExitInput);
  m.attr("EXIT_DEGENERATE") = static_cast<int>(kExitDegenerate);
}
