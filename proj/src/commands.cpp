#include "rlr/commands.hpp"

#include "json.hpp"
#include "rlr/errors.hpp"

namespace rlr {

namespace {

Report titled(Report r, const std::string& title) {
  r.title = title;
  return r;
}

std::size_t requested_order(const TruncatedDeformation& d, const CommandOptions& opt) {
  return opt.order.value_or(d.order());
}

/// Drops or zero-pads coefficients so that d has the given order.
TruncatedDeformation with_order(const LRContext& ctx, TruncatedDeformation d, std::size_t order) {
  d.mu.resize(std::min(d.mu.size(), order + 1), d.mu.front());
  d.omega.resize(std::min(d.omega.size(), order + 1));
  d.rho.resize(std::min(d.rho.size(), order + 1));
  while (d.order() < order) append_coefficient(ctx, d, zero_p_cochain(ctx));
  return d;
}

const DeformationSection& need_deformation(const AlgebraFile& f) {
  if (!f.deformation) throw InputError("the command needs the deformation section");
  return *f.deformation;
}

/// Appends a "coefficients lie in C2_LR" check; false when they do not.
bool add_validation(Report& rep, const LRContext& ctx, const TruncatedDeformation& d) {
  Check& c = rep.add("coefficients lie in C2_LR");
  try {
    validate_coefficients(ctx, d);
  } catch (const DomainError& e) {
    c.passed = false;
    c.witness = e.what();
  }
  return c.passed;
}

void add_lr_coordinates(Report& rep, const std::string& name, const LRContext& ctx, const TruncatedDeformation& d) {
  if (ctx.R.p() != 2) return;
  std::vector<Vec> coeffs;
  for (std::size_t k = 1; k <= d.order(); ++k) coeffs.push_back(lr_coefficient(ctx, d, k).coordinates());
  rep.add_basis(name, std::move(coeffs));
}

Report cohomology_in_degree(const LRContext& ctx, std::size_t n) {
  Report rep;
  rep.title = "LR cohomology in degree " + std::to_string(n);
  const std::string s = std::to_string(n);
  SubspaceBasis c = lr_cochain_space(ctx, n);
  SubspaceBasis z = intersect(c, kernel_basis(lr_differential_matrix(ctx, n)));
  SubspaceBasis b(ctx.R.field(), c.ambient_dim());
  if (n >= 2) b = map_subspace(lr_differential_matrix(ctx, n - 1), lr_cochain_space(ctx, n - 1));
  rep.add("B" + s + "_LR contained in Z" + s + "_LR", z.contains(b));
  rep.set_dimension("C" + s + "_LR_dim", static_cast<long long>(c.dim()));
  rep.set_dimension("Z" + s + "_LR_dim", static_cast<long long>(z.dim()));
  rep.set_dimension("B" + s + "_LR_dim", static_cast<long long>(b.dim()));
  if (z.contains(b)) rep.set_dimension("H" + s + "_LR_dim", static_cast<long long>(quotient_dim(z, b)));
  rep.add_basis("Z" + s + "_LR", z.vectors());
  rep.add_basis("B" + s + "_LR", b.vectors());
  if (n == 1) rep.notes.push_back("degree 1 has no coboundaries in this complex; B1_LR is reported as zero");
  return rep;
}

Report run_cohomology(const AlgebraFile& file, const CommandOptions& opt) {
  LRContext ctx = make_lr_context(to_rlr(file), opt.budget);
  if (ctx.R.p() != 2)
    throw InputError("the LR cohomology solver works in characteristic 2; use verify-cocycle for p >= 3");
  const std::size_t n = opt.degree.value_or(2);
  if (n < 1 || n > 3) throw InputError("--degree for cohomology must be 1, 2 or 3");
  if (n != 2) return cohomology_in_degree(ctx, n);
  return cohomology_report(ctx, reference_cocycles(ctx, file.name));
}

Report run_derivations(const AlgebraFile& file) {
  AlgebraPresentation A = to_algebra(file);
  SubspaceBasis der = compute_derivations(A);
  Report rep;
  rep.title = "derivations of " + A.name();
  Check& c = rep.add("basis elements satisfy the Leibniz rule");
  for (const auto& v : der.vectors())
    if (c.passed && !is_derivation(A, unflatten(A.field(), A.dim(), v))) {
      c.passed = false;
      c.witness = to_string(v);
    }
  rep.set_dimension("Der_A_dim", static_cast<long long>(der.dim()));
  rep.add_basis("Der_A", der.vectors());
  rep.notes.push_back("a derivation D is listed row-major: entry (k, b) is the e_k-coordinate of D(e_b)");
  return rep;
}

Report run_pmap_extend(const AlgebraFile& file, const CommandOptions& opt) {
  LiePresentation L = to_lie(file);
  Report rep;
  rep.title = "p-map extension";
  Check& c = rep.add("basis images extend to a p-map");
  try {
    LiePresentation ext = extend_pmap(L, L.pmap_on_basis());
    rep.merge(check_restricted_lie(ext, opt.budget), "");
    rep.add_basis("pmap_on_basis", ext.pmap_on_basis());
  } catch (const DomainError& e) {
    c.passed = false;
    c.witness = e.what();
  }
  return rep;
}

Report run_verify_cocycle(const AlgebraFile& file, const CommandOptions& opt) {
  if (!file.cochain) throw InputError("verify-cocycle needs the cochain section");
  LRContext ctx = make_lr_context(to_rlr(file), opt.budget);
  return verify_p_cocycle(ctx, to_p_cochain(ctx, *file.cochain));
}

Report run_deform_check(const AlgebraFile& file, const CommandOptions& opt) {
  LRContext ctx = make_lr_context(to_rlr(file), opt.budget);
  TruncatedDeformation d = to_deformation(ctx, need_deformation(file));
  d = with_order(ctx, std::move(d), requested_order(d, opt));
  Report rep;
  rep.title = "deformation check";
  rep.set_dimension("order", static_cast<long long>(d.order()));
  if (!add_validation(rep, ctx, d)) return rep;
  rep.merge(check_deformation(ctx, d, DeformationCheckOptions{false}), "");
  return rep;
}

Report run_obstruct(const AlgebraFile& file, const CommandOptions& opt) {
  LRContext ctx = make_lr_context(to_rlr(file), opt.budget);
  TruncatedDeformation d = to_deformation(ctx, need_deformation(file));
  d = with_order(ctx, std::move(d), requested_order(d, opt));
  Report rep;
  rep.title = "obstructions";
  rep.set_dimension("order", static_cast<long long>(d.order()));
  if (!add_validation(rep, ctx, d)) return rep;
  Report input = check_deformation(ctx, d, DeformationCheckOptions{false});
  rep.add("input is a deformation of the stated order", input.passed(),
          input.passed() ? "" : "run deform-check for the failing condition");
  if (!input.passed()) return rep;

  Obstructions o = obstructions(ctx, d);
  rep.add_basis("obs1", {o.obs1.coordinates()});
  std::vector<Vec> obs2;
  for (const auto& row : o.obs2) {
    Vec flat;
    for (const auto& v : row) flat.insert(flat.end(), v.begin(), v.end());
    obs2.push_back(std::move(flat));
  }
  rep.add_basis("obs2", std::move(obs2));
  rep.add_basis("mobs1", {o.mobs1.coordinates()});
  rep.add_basis("mobs2", o.mobs2);
  rep.set_flag("obs2_evaluated", o.obs2_evaluated);

  std::optional<TruncatedDeformation> next = extend(ctx, d);
  rep.set_flag("extends", next.has_value());
  if (next) {
    rep.merge(obstruction_identities(ctx, *next), "");
    add_lr_coordinates(rep, "extension_coefficients", ctx, *next);
    if (ctx.R.p() != 2) rep.merge(order_two_hochschild(ctx, *next), "");
  }
  rep.notes.push_back("obs1 in increasing-triple coordinates; obs2 rows follow the element order of L, "
                      "each row listing obs2(x, e_j) for j = 1..n; mobs in Der(A) coordinates");
  return rep;
}

Report run_transport(const AlgebraFile& file, const CommandOptions& opt) {
  if (!file.automorphism) throw InputError("transport needs the automorphism section");
  LRContext ctx = make_lr_context(to_rlr(file), opt.budget);
  TruncatedDeformation d = to_deformation(ctx, need_deformation(file));
  FormalAutomorphism phi = to_automorphism(ctx, *file.automorphism);
  validate_automorphism(ctx, phi);
  Report rep;
  rep.title = "transport";
  if (!add_validation(rep, ctx, d)) return rep;
  TruncatedDeformation moved = transport(ctx, d, phi);
  for (const auto& [prefix, def] : {std::pair{"input: ", &d}, std::pair{"transported: ", &moved}}) {
    Report r = check_deformation(ctx, *def, DeformationCheckOptions{false});
    r.dimensions.clear();
    rep.merge(r, prefix);
  }
  rep.set_dimension("order", static_cast<long long>(d.order()));
  TruncatedDeformation back = transport(ctx, moved, phi.inverse());
  rep.add("transport by the inverse restores the input", back.mu == d.mu && back.omega == d.omega && back.rho == d.rho);
  if (d.order() >= 1) {
    Vec diff = lr_coefficient(ctx, moved, 1).coordinates();
    ctx.R.field().axpy(diff, ctx.R.field().neg(1), lr_coefficient(ctx, d, 1).coordinates());
    rep.add("infinitesimals differ by an element of B2_LR", compute_Z2_B2_H2(ctx).b.contains(diff));
  }
  add_lr_coordinates(rep, "transported_coefficients", ctx, moved);
  return rep;
}

Report run_trivial_test(const AlgebraFile& file, const CommandOptions& opt) {
  LRContext ctx = make_lr_context(to_rlr(file), opt.budget);
  PCochain2 c = zero_p_cochain(ctx);
  if (file.cochain) {
    c = to_p_cochain(ctx, *file.cochain);
  } else if (file.deformation) {
    c = coefficient(ctx, to_deformation(ctx, *file.deformation), 1);
  } else {
    throw InputError("trivial-test needs the cochain or the deformation section");
  }
  Report rep;
  rep.title = "coboundary test";
  if (ctx.R.p() == 2) {
    LRCochain lr = file.cochain ? to_lr_cochain(ctx, *file.cochain)
                                : lr_coefficient(ctx, to_deformation(ctx, *file.deformation), 1);
    auto bad = lr_first_violation(ctx, lr);
    rep.add("cochain lies in C2_LR", !bad, bad ? bad->constraint + " at " + bad->instance : "");
    rep.add("cochain lies in B2_LR", compute_Z2_B2_H2(ctx).b.contains(lr.coordinates()));
  } else if (!file.candidate) {
    throw InputError("for p >= 3 trivial-test needs the candidate section (gamma, d)");
  }
  if (file.candidate) {
    PCochain1 cand = to_p_candidate(ctx, *file.candidate);
    PVerifierOptions vo{opt.semilinear_c1};
    auto bad = p_c1_violation(ctx, cand, vo);
    rep.add("candidate is a degree-1 LR cochain", !bad, bad.value_or(""));
    if (!bad) rep.add("cochain equals the differential of the candidate", verify_trivial_p_cocycle(ctx, c, cand, vo));
    rep.notes.push_back(std::string("degree-1 condition read as ") +
                        (opt.semilinear_c1 ? "gamma(ax) = a^p gamma(x) + d(a)x" : "gamma(ax) = a gamma(x) + d(a)x"));
  }
  return rep;
}

Report run_verify(const AlgebraFile& file, const CommandOptions& opt) {
  Report rep = verify_report(file, opt.budget);
  if (opt.with_cohomology) {
    if (!file.has_rlr() || file.p != 2)
      throw InputError("--cohomology needs a characteristic-2 Lie-Rinehart example");
    if (rep.passed()) rep.merge(run_cohomology(file, opt), "");
  }
  return rep;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"verify",    "derivations", "pmap-extend", "cohomology",  "verify-cocycle",
                                              "deform-check", "obstruct", "transport",   "trivial-test"};
  return names;
}

Report verify_report(const AlgebraFile& file, const EnumerationBudget& budget) {
  if (file.has_rlr()) return check_rlr(to_rlr(file), budget);
  if (file.L) return check_restricted_lie(to_lie(file), budget);
  if (file.A) return check_commutative_associative(to_algebra(file));
  throw InputError("the file has neither an A nor an L section");
}

CommandResult run_command(const std::string& command, const AlgebraFile& file, const CommandOptions& opt) {
  const std::string title = opt.echo.empty() ? command + " " + file.name : opt.echo;
  Report rep;
  if (opt.builtin && command != "verify") {
    Report gate = verify_report(file, opt.budget);
    if (!gate.passed()) {
      gate.title = title + " (stopped: built-in example failed verify)";
      return {std::move(gate), kExitCheckFailed};
    }
  }
  if (command == "verify") {
    rep = run_verify(file, opt);
  } else if (command == "derivations") {
    rep = run_derivations(file);
  } else if (command == "pmap-extend") {
    rep = run_pmap_extend(file, opt);
  } else if (command == "cohomology") {
    rep = run_cohomology(file, opt);
  } else if (command == "verify-cocycle") {
    rep = run_verify_cocycle(file, opt);
  } else if (command == "deform-check") {
    rep = run_deform_check(file, opt);
  } else if (command == "obstruct") {
    rep = run_obstruct(file, opt);
  } else if (command == "transport") {
    rep = run_transport(file, opt);
  } else if (command == "trivial-test") {
    rep = run_trivial_test(file, opt);
  } else {
    throw InputError("unknown command '" + command + "'");
  }
  rep = titled(std::move(rep), title);
  const int code = rep.passed() ? kExitOk : kExitCheckFailed;
  return {std::move(rep), code};
}

int exit_code_for(const Error& e) {
  return dynamic_cast<const BudgetExceeded*>(&e) ? kExitBudgetExceeded : kExitInputError;
}

RenderedResult run_and_render(const std::string& command, const AlgebraFile& file, const CommandOptions& opt,
                              ReportFormat format) {
  RenderedResult out;
  try {
    CommandResult r = run_command(command, file, opt);
    out.output = emit(r.report, format);
    out.exit_code = r.exit_code;
  } catch (const Error& e) {
    out.exit_code = exit_code_for(e);
    out.error = e.what();
    if (format == ReportFormat::Json) {
      nlohmann::ordered_json j;
      j["error"] = out.error;
      j["exit_code"] = out.exit_code;
      out.output = j.dump(2) + "\n";
    }
  }
  return out;
}

}  // namespace rlr
