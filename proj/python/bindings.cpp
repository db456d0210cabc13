#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rlr/commands.hpp"
#include "rlr/errors.hpp"
#include "json.hpp"

namespace py = pybind11;

namespace {

rlr::AlgebraFile load(const std::optional<std::string>& text, const std::optional<std::string>& example,
                      rlr::Scalar lambda1, rlr::Scalar lambda2) {
  if (text.has_value() == example.has_value()) throw rlr::InputError("give exactly one of text and example");
  if (text) return rlr::parse_algebra_file(*text);
  return rlr::file_from_example(rlr::make_example(*example, lambda1 % 2, lambda2 % 2));
}

py::dict run(const std::string& command, std::optional<std::string> text, std::optional<std::string> example,
             std::optional<std::size_t> order, std::optional<std::size_t> degree, const std::string& format,
             std::uint64_t budget, rlr::Scalar lambda1, rlr::Scalar lambda2, bool c1_linear) {
  rlr::CommandOptions opt;
  opt.order = order;
  opt.degree = degree;
  opt.budget.evaluations = budget;
  opt.semilinear_c1 = !c1_linear;
  opt.builtin = example.has_value();
  py::dict out;
  rlr::RenderedResult r;
  try {
    if (format != "text" && format != "json") throw rlr::InputError("format must be text or json");
    r = rlr::run_and_render(command, load(text, example, lambda1, lambda2), opt,
                            format == "json" ? rlr::ReportFormat::Json : rlr::ReportFormat::Text);
  } catch (const rlr::Error& e) {
    r.error = e.what();
    r.exit_code = rlr::exit_code_for(e);
    if (format == "json") r.output = nlohmann::ordered_json{{"error", r.error}, {"exit_code", r.exit_code}}.dump(2) + "\n";
  }
  out["output"] = r.output;
  out["error"] = r.error;
  out["exit_code"] = r.exit_code;
  return out;
}

}  // namespace

PYBIND11_MODULE(_rlr, m) {
  m.doc() = "Restricted Lie-Rinehart algebras over GF(p)";
  m.def("example_names", &rlr::example_names);
  m.def("command_names", &rlr::command_names);
  m.def(
      "export_example",
      [](const std::string& name, rlr::Scalar lambda1, rlr::Scalar lambda2) {
        return rlr::serialize(rlr::file_from_example(rlr::make_example(name, lambda1 % 2, lambda2 % 2)));
      },
      py::arg("name"), py::arg("lambda1") = 1, py::arg("lambda2") = 0);
  m.def(
      "normalize", [](const std::string& text) { return rlr::serialize(rlr::parse_algebra_file(text)); },
      "Parses an input document and writes it back in canonical form.");
  m.def("run", &run, py::arg("command"), py::kw_only(), py::arg("text") = py::none(),
        py::arg("example") = py::none(), py::arg("order") = py::none(), py::arg("degree") = py::none(),
        py::arg("format") = "text", py::arg("budget") = rlr::EnumerationBudget{}.evaluations,
        py::arg("lambda1") = 1, py::arg("lambda2") = 0, py::arg("c1_linear") = false);
  py::register_exception<rlr::Error>(m, "RlrError");
}
