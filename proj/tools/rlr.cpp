// rlr: command-line front end for restricted Lie-Rinehart computations.

#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rlr/commands.hpp"
#include "rlr/errors.hpp"

namespace {

struct Flags {
  std::string input;
  std::string example;
  std::size_t order = 0;
  std::size_t degree = 0;
  std::string format = "text";
  std::uint64_t budget = rlr::EnumerationBudget{}.evaluations;
  long long lambda1 = 1, lambda2 = 0;
  bool c1_linear = false;
  bool cohomology = false;
};

std::string examples_list(rlr::ReportFormat format) {
  if (format == rlr::ReportFormat::Json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& name : rlr::example_names())
      arr.push_back({{"name", name}, {"description", rlr::make_example(name).description}});
    return arr.dump(2) + "\n";
  }
  std::string out;
  for (const auto& name : rlr::example_names()) {
    std::string pad(name.size() < 10 ? 10 - name.size() : 1, ' ');
    out += name + pad + rlr::make_example(name).description + "\n";
  }
  return out;
}

std::string echo_of(int argc, char** argv) {
  std::string s = "rlr";
  for (int i = 1; i < argc; ++i) s += std::string(" ") + argv[i];
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Restricted Lie-Rinehart algebras over GF(p): checks, cohomology and deformations"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags fl;
  app.add_option("--input", fl.input, "algebra file (JSON)")->check(CLI::ExistingFile);
  app.add_option("--example", fl.example, "built-in example name");
  auto* order_opt = app.add_option("--order", fl.order, "truncation order N");
  auto* degree_opt = app.add_option("--degree", fl.degree, "cochain degree");
  app.add_option("--format", fl.format, "output format")
      ->check(CLI::IsMember({"text", "json", "json-like"}));
  app.add_option("--budget", fl.budget, "maximum evaluations for exhaustive quantifiers");
  app.add_option("--lambda1", fl.lambda1, "lambda1 for Lab1_A4");
  app.add_option("--lambda2", fl.lambda2, "lambda2 for Lab1_A4");
  app.add_flag("--c1-linear", fl.c1_linear,
               "for p >= 3, read the degree-1 LR condition as gamma(ax) = a gamma(x) + d(a)x");

  std::string command;
  for (const auto& name : rlr::command_names())
    app.add_subcommand(name)->callback([&command, name] { command = name; });
  app.add_subcommand("export", "print the canonical file of the input")->callback([&] { command = "export"; });

  auto* examples = app.add_subcommand("examples", "built-in examples");
  examples->require_subcommand(1);
  examples->add_subcommand("list")->callback([&] { command = "examples-list"; });
  std::string run_name;
  auto* run = examples->add_subcommand("run");
  run->add_option("name", run_name, "example name")->required();
  run->add_flag("--cohomology", fl.cohomology, "append the cohomology report");
  run->callback([&] { command = "examples-run"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return rlr::kExitInputError;
  }

  const rlr::ReportFormat format = fl.format == "text" ? rlr::ReportFormat::Text : rlr::ReportFormat::Json;
  if (command == "examples-list") {
    std::cout << examples_list(format);
    return rlr::kExitOk;
  }

  rlr::CommandOptions opt;
  if (order_opt->count()) opt.order = fl.order;
  if (degree_opt->count()) opt.degree = fl.degree;
  opt.budget.evaluations = fl.budget;
  opt.semilinear_c1 = !fl.c1_linear;
  opt.echo = echo_of(argc, argv);

  rlr::AlgebraFile file;
  try {
    if (command == "examples-run") {
      fl.example = run_name;
      opt.with_cohomology = fl.cohomology;
      command = "verify";
    }
    if (fl.input.empty() == fl.example.empty()) throw rlr::InputError("give exactly one of --input and --example");
    if (!fl.example.empty()) {
      const rlr::PrimeField gf2(2);
      file = rlr::file_from_example(rlr::make_example(fl.example, gf2.reduce(fl.lambda1), gf2.reduce(fl.lambda2)));
      opt.builtin = true;
    } else {
      file = rlr::read_algebra_file(fl.input);
    }
  } catch (const rlr::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return rlr::exit_code_for(e);
  }

  if (command == "export") {
    std::cout << rlr::serialize(file);
    return rlr::kExitOk;
  }

  rlr::RenderedResult r = rlr::run_and_render(command, file, opt, format);
  std::cout << r.output;
  if (!r.error.empty()) std::cerr << "error: " << r.error << '\n';
  return r.exit_code;
}
