#include "doctest.h"
#include "rlr/commands.hpp"
#include "rlr/errors.hpp"
#include "support.hpp"

using namespace rlr;
using rlr::testing::Rng;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_algebra_file(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

CommandOptions builtin() {
  CommandOptions o;
  o.builtin = true;
  return o;
}

}  // namespace

TEST_CASE("parse after serialize is the identity on every built-in") {
  for (const auto& name : example_names()) {
    CAPTURE(name);
    AlgebraFile f = file_from_example(make_example(name));
    std::string text = serialize(f);
    AlgebraFile back = parse_algebra_file(text);
    CHECK(back == f);
    CHECK(serialize(back) == text);
  }
}

TEST_CASE("file conversion reproduces the structure constants") {
  Example ex = make_example("rigid_A4");
  RLRAlgebra R = to_rlr(parse_algebra_file(serialize(file_from_example(ex))));
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) {
        CHECK(R.A.coef(i, j, k) == ex.R->A.coef(i, j, k));
        CHECK(R.L.coef(i, j, k) == ex.R->L.coef(i, j, k));
        CHECK(R.action.coef(i, j, k) == ex.R->action.coef(i, j, k));
      }
    CHECK(R.anchor[i] == ex.R->anchor[i]);
    CHECK(R.L.pmap_on_basis()[i] == ex.R->L.pmap_on_basis()[i]);
  }
}

TEST_CASE("parse errors carry a position or a field path") {
  CHECK(error_of("{\"p\": 2,\n \"A\": {\"dim\": 2,]}").find("line 2") != std::string::npos);
  CHECK(error_of(R"({"p": 2, "A": {"dim": 2, "mult": [[0, 0, 2, 1]]}})").find("$.A.mult[0]") != std::string::npos);
  CHECK(error_of(R"({"p": 3, "A": {"dim": 1, "mult": [[0, 0, 0, 3]]}})").find("residue") != std::string::npos);
  CHECK(error_of(R"({"p": 4, "A": {"dim": 1}})").find("$.p") != std::string::npos);
  CHECK(error_of(R"({"p": 2, "A": {"dim": 1, "mul": []}})").find("$.A.mul") != std::string::npos);
  CHECK(error_of(R"({"p": 2, "A": {"dim": 1, "mult": [[0, 0, 0, 1], [0, 0, 0, 0]]}})").find("duplicate") !=
        std::string::npos);
  CHECK(error_of(R"({"p": 2, "L": {"dim": 2, "pmap": [[0, 0]]}})").find("$.L.pmap") != std::string::npos);
  CHECK(error_of(R"({"p": 2, "A": {"dim": 1}, "cochain": {}})").find("$.cochain") != std::string::npos);
}

TEST_CASE("cochain sections convert both ways") {
  Rng rng(1);
  for (const auto& name : {"Lab0_A4", "DerA4", "P3_nab", "P3_ab1"}) {
    CAPTURE(name);
    LRContext ctx = make_lr_context(*make_example(name).R);
    for (int trial = 0; trial < 5; ++trial) {
      PCochain2 c = ctx.R.p() == 2
                        ? p_cochain_from_lr(ctx, lr_cochain_from_coordinates(ctx, 2, rng.in(lr_cochain_space(ctx, 2))))
                        : rlr::testing::random_homogeneous_cochain(ctx, rng);
      PCochain2 back = to_p_cochain(ctx, cochain_section(ctx, c));
      CHECK(back.mu == c.mu);
      CHECK(back.omega == c.omega);
      CHECK(back.theta == c.theta);
    }
  }
}

TEST_CASE("omega off the basis is refused in characteristic 2") {
  LRContext ctx = make_lr_context(*make_example("Lab0_A4").R);
  CochainSection s;
  s.omega.push_back({{1, 1, 0}, 1});
  CHECK_THROWS_AS(to_lr_cochain(ctx, s), InputError);
}

TEST_CASE("A-only file runs the algebra checks only") {
  AlgebraFile f = parse_algebra_file(R"({"p": 2, "A": {"dim": 2, "mult": [[0, 0, 0, 1]]}})");
  CommandResult r = run_command("verify", f, {});
  CHECK(r.exit_code == kExitOk);
  CHECK(r.report.checks.size() == 2);
}

TEST_CASE("commands on built-ins") {
  AlgebraFile rigid = file_from_example(make_example("rigid_A4"));
  CommandResult r = run_command("cohomology", rigid, builtin());
  CHECK(r.exit_code == kExitOk);
  std::string json = emit(r.report, ReportFormat::Json);
  std::string text = emit(r.report, ReportFormat::Text);
  for (const auto& [k, v] : r.report.dimensions) {
    CHECK(json.find("\"" + k + "\": " + std::to_string(v)) != std::string::npos);
    CHECK(text.find(k + " = " + std::to_string(v)) != std::string::npos);
  }
  CHECK(json == emit(run_command("cohomology", rigid, builtin()).report, ReportFormat::Json));

  AlgebraFile lab0 = file_from_example(make_example("Lab0_A4"));
  CommandResult c = run_command("cohomology", lab0, builtin());
  CHECK(c.report.find("reference cocycle (mu1,omega4,theta1) in Z2_LR")->passed);

  CommandResult d = run_command("derivations", file_from_example(make_example("A4")), builtin());
  CHECK(emit(d.report, ReportFormat::Json).find("\"Der_A_dim\": 2") != std::string::npos);
}

TEST_CASE("exit codes") {
  AlgebraFile lab0 = file_from_example(make_example("Lab0_A4"));
  CommandOptions tight = builtin();
  tight.budget.evaluations = 4;
  CHECK(run_and_render("cohomology", lab0, tight, ReportFormat::Text).exit_code == kExitBudgetExceeded);
  CHECK(run_and_render("verify-cocycle", lab0, builtin(), ReportFormat::Text).exit_code == kExitInputError);
  RenderedResult j = run_and_render("no-such-command", lab0, builtin(), ReportFormat::Json);
  CHECK(j.exit_code == kExitInputError);
  CHECK(j.output.find("\"error\"") != std::string::npos);

  AlgebraFile broken = lab0;
  broken.A->mult.push_back({{0, 1, 0}, 1});
  broken.A->mult.erase(broken.A->mult.begin());
  CHECK(run_command("verify", broken, {}).exit_code == kExitCheckFailed);
  CommandResult gated = run_command("cohomology", broken, builtin());
  CHECK(gated.exit_code == kExitCheckFailed);
  CHECK(gated.report.title.find("failed verify") != std::string::npos);
}

TEST_CASE("cochain commands from a file") {
  AlgebraFile f = file_from_example(make_example("Lab0_A4"));
  LRContext ctx = make_lr_context(to_rlr(f));
  auto refs = reference_cocycles(ctx, "Lab0_A4");
  CochainSection s = cochain_section(ctx, p_cochain_from_lr(ctx, refs.front().cochain));
  f.cochain = s;
  f.deformation = DeformationSection{1, {{1, s}}};
  f = parse_algebra_file(serialize(f));
  CHECK(run_command("verify-cocycle", f, builtin()).exit_code == kExitOk);
  CHECK(run_command("deform-check", f, builtin()).exit_code == kExitOk);
  CHECK(run_command("trivial-test", f, builtin()).exit_code == kExitCheckFailed);
  CommandResult o = run_command("obstruct", f, builtin());
  CHECK(o.exit_code == kExitOk);
  CommandOptions two = builtin();
  two.order = 2;
  CHECK(run_command("deform-check", f, two).report.dimensions.front().second == 2);

  f.automorphism = AutomorphismSection{1, {{1, {{{0, 0}, 1}, {{1, 1}, 1}}}}};
  CHECK(run_command("transport", f, builtin()).exit_code == kExitOk);
}

TEST_CASE("p = 3 trivial-test with a candidate") {
  AlgebraFile f = file_from_example(make_example("P3_nab"));
  LRContext ctx = make_lr_context(to_rlr(f));
  PCochain1 c{CEChain(ctx.R.field(), 1, 2, 2), Vec(ctx.dim_g(), 0)};
  c.gamma.set_basis({0}, Vec{1, 0});  // image mu(x, y) = y, nonzero
  REQUIRE_FALSE(p_c1_violation(ctx, c, {}).has_value());
  f.cochain = cochain_section(ctx, p_differential1(ctx, c));
  f.candidate = CandidateSection{{{{0, 0}, 1}}, {}};
  f = parse_algebra_file(serialize(f));
  CHECK(run_command("trivial-test", f, builtin()).exit_code == kExitOk);
  f.candidate->gamma.front().value = 2;
  CHECK(run_command("trivial-test", f, builtin()).exit_code == kExitCheckFailed);
}
