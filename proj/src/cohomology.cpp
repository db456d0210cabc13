#include "rlr/cohomology.hpp"

#include <sstream>

namespace rlr {

Matrix matrix_of(const PrimeField& field, std::size_t in_dim, std::size_t out_dim,
                 const std::function<Vec(const Vec&)>& f) {
  Matrix m(field, out_dim, in_dim);
  for (std::size_t j = 0; j < in_dim; ++j) {
    Vec col = f(unit(in_dim, j));
    if (col.size() != out_dim) throw InputError("matrix_of: image has the wrong length");
    for (std::size_t i = 0; i < out_dim; ++i) m(i, j) = col[i];
  }
  return m;
}

namespace {

Vec flatten_residuals(const std::vector<ConstraintInstance>& inst) {
  Vec r;
  for (const auto& i : inst) r.insert(r.end(), i.residual.begin(), i.residual.end());
  return r;
}

std::size_t residual_length(const LRContext& ctx, std::size_t degree) {
  return flatten_residuals(lr_constraint_instances(ctx, zero_lr_cochain(ctx, degree))).size();
}

}  // namespace

Matrix constraint_system(const LRContext& ctx, std::size_t degree) {
  const std::size_t n = lr_coordinate_count(ctx, degree);
  return matrix_of(ctx.R.field(), n, residual_length(ctx, degree), [&](const Vec& v) {
    return flatten_residuals(lr_constraint_instances(ctx, lr_cochain_from_coordinates(ctx, degree, v)));
  });
}

SubspaceBasis lr_cochain_space(const LRContext& ctx, std::size_t degree) {
  Matrix m = constraint_system(ctx, degree);
  if (m.rows() == 0) return SubspaceBasis::full(ctx.R.field(), m.cols());
  return kernel_basis(m);
}

Matrix lr_differential_matrix(const LRContext& ctx, std::size_t degree) {
  return matrix_of(ctx.R.field(), lr_coordinate_count(ctx, degree), lr_coordinate_count(ctx, degree + 1),
                   [&](const Vec& v) {
                     return lr_differential(ctx, lr_cochain_from_coordinates(ctx, degree, v), false).coordinates();
                   });
}

CohomologyResult compute_Z2_B2_H2(const LRContext& ctx, const std::vector<NamedCocycle>& named) {
  CohomologyResult r{lr_cochain_space(ctx, 1), lr_cochain_space(ctx, 2), SubspaceBasis(ctx.R.field(), 0),
                     SubspaceBasis(ctx.R.field(), 0), 0, {}};
  r.z = intersect(r.c2, kernel_basis(lr_differential_matrix(ctx, 2)));
  r.b = map_subspace(lr_differential_matrix(ctx, 1), r.c1);
  r.h_dim = quotient_dim(r.z, r.b);
  for (const auto& n : named) r.named_cocycle_matches.emplace_back(n.label, r.z.contains(n.cochain.coordinates()));
  return r;
}

SubspaceBasis compute_Z2_res(const LiePresentation& L) {
  ModuleContext ctx = adjoint_context(L);
  const std::size_t n = L.dim();
  ResCochain shape(L.field(), 2, n, n);
  Matrix m = matrix_of(L.field(), shape.coordinate_count(), res_coordinate_count(3, n, n), [&](const Vec& v) {
    ResCochain c = shape;
    c.set_coordinates(v);
    return d_res(ctx, c).coordinates();
  });
  return kernel_basis(m);
}

SubspaceBasis compute_B2_res(const LiePresentation& L) {
  ModuleContext ctx = adjoint_context(L);
  const std::size_t n = L.dim();
  ResCochain shape(L.field(), 1, n, n);
  Matrix m = matrix_of(L.field(), shape.coordinate_count(), res_coordinate_count(2, n, n), [&](const Vec& v) {
    ResCochain c = shape;
    c.set_coordinates(v);
    return d_res(ctx, c).coordinates();
  });
  return image_basis(m);
}

std::optional<ThetaSolution> solve_theta(const LRContext& ctx, const ResCochain& first) {
  LRCochain base = zero_lr_cochain(ctx, 2);
  base.first = first;
  const Vec r0 = flatten_residuals(lr_constraint_instances(ctx, base));
  const std::size_t nt = base.third.coordinate_count();
  // The residual is affine in theta: r(theta) = r0 + M theta.
  Matrix M = matrix_of(ctx.R.field(), nt, r0.size(), [&](const Vec& t) {
    LRCochain c = base;
    c.third.set_coordinates(t);
    Vec r = flatten_residuals(lr_constraint_instances(ctx, c));
    ctx.R.field().axpy(r, ctx.R.field().neg(1), r0);
    return r;
  });
  auto sol = solve(M, ctx.R.field().negated(r0));
  if (!sol) return std::nullopt;
  return ThetaSolution{*sol, kernel_basis(M)};
}

ResCochain mu_omega(const PrimeField& f, const Vec& mu_xy, const Vec& omega_x, const Vec& omega_y) {
  ResCochain c(f, 2, 2, 2);
  c.phi.set_value(0, mu_xy);
  c.omega[0].set_value(0, omega_x);
  c.omega[1].set_value(0, omega_y);
  return c;
}

ResCochain theta_from_matrices(const LRContext& ctx, const std::vector<Matrix>& images) {
  ResCochain t(ctx.R.field(), 1, ctx.dim_l(), ctx.dim_g());
  for (std::size_t i = 0; i < images.size(); ++i) t.phi.set_value(i, ctx.G.coordinates(images[i]));
  return t;
}

std::vector<NamedCocycle> reference_cocycles(const LRContext& ctx, const std::string& example) {
  const PrimeField f(2);
  if (example != "Lab0_A4" && example != "Lab1_A4") return {};
  const bool identity_pmap = example == "Lab1_A4";
  auto E = [&](std::size_t r, std::size_t c) {
    Matrix m(f, 2, 2);
    m(r, c) = 1;
    return m;
  };
  const Vec x{1, 0}, y{0, 1}, o{0, 0};
  ResCochain theta1 = theta_from_matrices(ctx, {E(0, 1), E(1, 1)});
  ResCochain theta2 = theta_from_matrices(ctx, {E(1, 1), Matrix(f, 2, 2)});
  ResCochain zero_theta(f, 1, 2, 2);
  std::vector<NamedCocycle> out;
  if (!identity_pmap) {
    out.push_back({"(mu1,omega4,theta1)", {mu_omega(f, x, o, y), theta1}});
    out.push_back({"(mu2,0,theta2)", {mu_omega(f, y, o, o), theta2}});
  } else {
    ResCochain t = theta1;
    t.add(theta2);
    out.push_back({"(mu1+mu2,omega4,theta1)", {mu_omega(f, Vec{1, 1}, o, y), theta1}});
  }
  out.push_back({"(0,omega1,0)", {mu_omega(f, o, x, o), zero_theta}});
  out.push_back({"(0,omega2,0)", {mu_omega(f, o, y, o), zero_theta}});
  return out;
}

Report cohomology_report(const LRContext& ctx, const std::vector<NamedCocycle>& named) {
  Report rep;
  rep.title = "deformation cohomology of " + ctx.R.name;
  SubspaceBasis zres = compute_Z2_res(ctx.R.L);
  CohomologyResult r = compute_Z2_B2_H2(ctx, named);
  rep.add("B2_LR contained in Z2_LR", r.z.contains(r.b));
  for (const auto& [label, ok] : r.named_cocycle_matches) rep.add("reference cocycle " + label + " in Z2_LR", ok);
  rep.set_dimension("Z2_res_dim", static_cast<long long>(zres.dim()));
  rep.set_dimension("C1_LR_dim", static_cast<long long>(r.c1.dim()));
  rep.set_dimension("C2_LR_dim", static_cast<long long>(r.c2.dim()));
  rep.set_dimension("Z2_LR_dim", static_cast<long long>(r.z.dim()));
  rep.set_dimension("B2_LR_dim", static_cast<long long>(r.b.dim()));
  rep.set_dimension("H2_LR_dim", static_cast<long long>(r.h_dim));
  rep.add_basis("Z2_res", zres.vectors());
  rep.add_basis("Z2_LR", r.z.vectors());
  rep.add_basis("B2_LR", r.b.vectors());
  rep.notes.push_back("LR chart (degree 2): mu on increasing pairs, omega on basis vectors, theta in Der(A) coordinates");
  return rep;
}

// ---------------------------------------------------------------------------
// p >= 3 verifier.

Vec PCochain2::omega_at(std::uint32_t p, std::span<const Scalar> x) const {
  return omega.at(index_of_element(p, x));
}

PCochain2 zero_p_cochain(const LRContext& ctx) {
  const PrimeField& f = ctx.R.field();
  const std::size_t n = ctx.dim_l();
  const std::uint64_t size = checked_power(f.p(), n, ctx.budget.evaluations, "omega table over L");
  return PCochain2{CEChain(f, 2, n, n), std::vector<Vec>(size, Vec(n, 0)), CEChain(f, 1, n, ctx.dim_g())};
}

PCochain2 p_cochain_from_lr(const LRContext& ctx, const LRCochain& c) {
  if (c.degree() != 2) throw InputError("p_cochain_from_lr expects a degree-2 cochain");
  PCochain2 out = zero_p_cochain(ctx);
  out.mu = c.first.phi;
  out.theta = c.third.phi;
  for (std::uint64_t i = 0; i < out.omega.size(); ++i)
    out.omega[i] = c.first.eval_omega(element_from_index(ctx.R.field().p(), ctx.dim_l(), i), {});
  return out;
}

namespace {

std::string vec_str(std::span<const Scalar> v) { return to_string(v); }

/// Records the first failure of a pointwise check.
class Probe {
 public:
  Probe(Report& rep, std::string name) : check_(rep.add(std::move(name))) {}
  void test(const PrimeField& f, std::span<const Scalar> residual, const std::function<std::string()>& where) {
    if (check_.passed && !f.is_zero(residual)) {
      check_.passed = false;
      check_.witness = where() + ", residual " + vec_str(residual);
    }
  }
  void partial(bool p) { check_.partial = check_.partial || p; }
  Check& check() { return check_; }

 private:
  Check& check_;
};

class PVerifier {
 public:
  PVerifier(const LRContext& ctx, const PCochain2& c) : ctx_(ctx), c_(c), f_(ctx.R.field()) {}

  Report run() {
    Report rep;
    rep.title = "cocycle verification over GF(" + std::to_string(f_.p()) + ") on " + ctx_.R.name;
    if (c_.mu.degree() != 2 || c_.mu.src_dim() != nl() || c_.mu.tgt_dim() != nl())
      throw InputError("mu must be an alternating 2-cochain L x L -> L");
    if (c_.theta.degree() != 1 || c_.theta.src_dim() != nl() || c_.theta.tgt_dim() != ng())
      throw InputError("theta must be a 1-cochain L -> Der(A)");
    if (c_.omega.size() != saturating_power(f_.p(), nl())) throw InputError("omega table must list every element of L");
    for (const Vec& v : c_.omega)
      if (v.size() != nl()) throw InputError("omega values must lie in L");

    ce_cocycle(rep);
    mu_leibniz(rep);
    theta_linear(rep);
    alpha(rep);
    beta(rep);
    omega_anchor(rep);
    homogeneity(rep);
    if (f_.p() == 2) {
      polarization(rep);
      delta_two(rep);
    } else {
      rep.notes.push_back("ind^2 condition not evaluated: its defining formula is an external reference");
    }
    return rep;
  }

 private:
  std::size_t nl() const { return ctx_.dim_l(); }
  std::size_t na() const { return ctx_.R.A.dim(); }
  std::size_t ng() const { return ctx_.dim_g(); }
  Scalar minus_one() const { return f_.neg(1); }
  Matrix der(std::span<const Scalar> coords) const { return ctx_.G.to_matrix(coords); }

  Matrix ad_power(const Matrix& D, const Matrix& E, std::size_t k) const {
    Matrix out = E;
    for (std::size_t i = 0; i < k; ++i) out = D * out - out * D;
    return out;
  }

  std::vector<ElementSet> sets(const std::vector<std::size_t>& dims) const {
    return quantifier_sets(f_.p(), dims, ctx_.budget.evaluations);
  }

  void ce_cocycle(Report& rep) {
    Probe pr(rep, "d2_CE mu = 0");
    CEChain d = d_ce(ctx_.morph.LL, c_.mu);
    for (std::size_t t = 0; t < d.tuple_count(); ++t)
      pr.test(f_, d.value(t), [&] { return "basis triple " + idx(d.tuple(t)); });
  }

  void mu_leibniz(Report& rep) {
    Probe pr(rep, "mu(x,ay) = a mu(x,y) + theta(x)(a) y");
    for (std::size_t i = 0; i < nl(); ++i)
      for (std::size_t a = 0; a < na(); ++a)
        for (std::size_t j = 0; j < nl(); ++j) {
          Vec x = unit(nl(), i), ea = unit(na(), a), y = unit(nl(), j);
          Vec r = c_.mu.eval({x, ctx_.R.act(ea, y)});
          f_.axpy(r, minus_one(), ctx_.R.act(ea, c_.mu.eval({x, y})));
          f_.axpy(r, minus_one(), ctx_.R.act(der(c_.theta.at_basis({i})).apply(ea), y));
          pr.test(f_, r, [&] { return "x=" + std::to_string(i) + " a=" + std::to_string(a) + " y=" + std::to_string(j); });
        }
  }

  void theta_linear(Report& rep) {
    Probe pr(rep, "theta is A-linear");
    for (std::size_t i = 0; i < nl(); ++i)
      for (std::size_t a = 0; a < na(); ++a) {
        Vec ea = unit(na(), a);
        Vec r = c_.theta.eval({ctx_.R.act(ea, unit(nl(), i))});
        f_.axpy(r, minus_one(), ctx_.G.coordinates(ctx_.R.scale(ea, der(c_.theta.at_basis({i})))));
        pr.test(f_, r, [&] { return "x=" + std::to_string(i) + " a=" + std::to_string(a); });
      }
  }

  /// alpha(theta) = rho o mu - d1_CE theta, with L acting on Der(A) through rho.
  void alpha(Report& rep) {
    Probe pr(rep, "alpha(theta) = 0");
    CEChain d = d_ce(ctx_.morph.LM, c_.theta);
    for (std::size_t t = 0; t < d.tuple_count(); ++t) {
      Vec r = ctx_.rho_coords(c_.mu.value(t));
      f_.axpy(r, minus_one(), d.value(t));
      pr.test(f_, r, [&] { return "basis pair " + idx(d.tuple(t)); });
    }
  }

  /// beta(theta)(x) = theta(x^[p]) + rho(omega(x)) - ad_{rho(x)}^{p-1} theta(x).
  void beta(Report& rep) {
    Probe pr(rep, "beta(theta) = 0");
    auto s = sets({nl()});
    pr.partial(s[0].partial);
    for (const Vec& x : s[0].elements) {
      Vec r = c_.theta.eval({ctx_.R.L.pmap(x)});
      f_.axpy(r, 1, ctx_.rho_coords(c_.omega_at(f_.p(), x)));
      Matrix tail = ad_power(ctx_.R.rho(x), der(c_.theta.eval({x})), f_.p() - 1);
      f_.axpy(r, minus_one(), ctx_.G.coordinates(tail));
      pr.test(f_, r, [&] { return "x=" + vec_str(x); });
    }
  }

  /// omega(ax) - a^p omega(x) = a^(p-1) sum_{i=0}^{p-2} rho(x)^i theta(x) rho(x)^(p-2-i) (a) x.
  void omega_anchor(Report& rep) {
    Probe pr(rep, "omega(ax) = a^p omega(x) + a^(p-1) sum rho(x)^i theta(x) rho(x)^(p-2-i)(a) x");
    auto s = sets({na(), nl()});
    pr.partial(s[0].partial || s[1].partial);
    const std::uint32_t p = f_.p();
    for (const Vec& a : s[0].elements)
      for (const Vec& x : s[1].elements) {
        Matrix rx = ctx_.R.rho(x), th = der(c_.theta.eval({x}));
        Vec acc(na(), 0);
        for (std::uint32_t i = 0; i + 2 <= p; ++i) {
          Matrix term = rx.power(i) * th * rx.power(p - 2 - i);
          f_.axpy(acc, 1, term.apply(a));
        }
        Vec coeff = ctx_.R.A.multiply(ctx_.R.A.power(a, p - 1), acc);
        Vec r = c_.omega_at(p, ctx_.R.act(a, x));
        f_.axpy(r, minus_one(), ctx_.R.act(ctx_.R.A.power(a, p), c_.omega_at(p, x)));
        f_.axpy(r, minus_one(), ctx_.R.act(coeff, x));
        pr.test(f_, r, [&] { return "a=" + vec_str(a) + " x=" + vec_str(x); });
      }
  }

  void homogeneity(Report& rep) {
    Probe pr(rep, "omega(lambda x) = lambda^p omega(x)");
    auto s = sets({nl()});
    pr.partial(s[0].partial);
    for (const Vec& x : s[0].elements)
      for (Scalar l = 0; l < f_.p(); ++l) {
        Vec r = c_.omega_at(f_.p(), f_.scaled(l, x));
        f_.axpy(r, minus_one(), f_.scaled(f_.frobenius(l), c_.omega_at(f_.p(), x)));
        pr.test(f_, r, [&] { return "lambda=" + std::to_string(l) + " x=" + vec_str(x); });
      }
  }

  void polarization(Report& rep) {
    Probe pr(rep, "omega(x+y) = omega(x) + omega(y) + mu(x,y)");
    auto s = sets({nl(), nl()});
    pr.partial(s[0].partial || s[1].partial);
    for (const Vec& x : s[0].elements)
      for (const Vec& y : s[1].elements) {
        Vec r = c_.omega_at(2, f_.added(x, y));
        f_.axpy(r, 1, c_.omega_at(2, x));
        f_.axpy(r, 1, c_.omega_at(2, y));
        f_.axpy(r, 1, c_.mu.eval({x, y}));
        pr.test(f_, r, [&] { return "x=" + vec_str(x) + " y=" + vec_str(y); });
      }
  }

  void delta_two(Report& rep) {
    Probe pr(rep, "delta^2 omega = 0");
    ResCochain rc(f_, 2, nl(), nl());
    rc.phi = c_.mu;
    for (std::size_t i = 0; i < nl(); ++i) rc.omega[i].set_value(0, c_.omega_at(2, unit(nl(), i)));
    auto d = delta_restricted(ctx_.morph.LL, rc);
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t t = 0; t < d[i].tuple_count(); ++t)
        pr.test(f_, d[i].value(t), [&] { return "x=" + std::to_string(i) + " Z=" + idx(d[i].tuple(t)); });
  }

  static std::string idx(const std::vector<std::size_t>& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
  }

  const LRContext& ctx_;
  const PCochain2& c_;
  PrimeField f_;
};

}  // namespace

Report verify_p_cocycle(const LRContext& ctx, const PCochain2& c) { return PVerifier(ctx, c).run(); }

std::optional<std::string> p_c1_violation(const LRContext& ctx, const PCochain1& c, const PVerifierOptions& opt) {
  const PrimeField& f = ctx.R.field();
  const std::size_t nl = ctx.dim_l(), na = ctx.R.A.dim();
  if (c.gamma.degree() != 1 || c.gamma.src_dim() != nl || c.gamma.tgt_dim() != nl || c.d.size() != ctx.dim_g())
    throw InputError("degree-1 cochain has the wrong shape");
  auto s = quantifier_sets(f.p(), {na, nl}, ctx.budget.evaluations);
  const Matrix D = ctx.G.to_matrix(c.d);
  for (const Vec& a : s[0].elements)
    for (const Vec& x : s[1].elements) {
      Vec coeff = opt.semilinear_c1 ? ctx.R.A.power(a, f.p()) : a;
      Vec r = c.gamma.eval({ctx.R.act(a, x)});
      f.axpy(r, f.neg(1), ctx.R.act(coeff, c.gamma.eval({x})));
      f.axpy(r, f.neg(1), ctx.R.act(D.apply(a), x));
      if (!f.is_zero(r)) return "gamma(ax) condition fails at a=" + to_string(a) + " x=" + to_string(x);
    }
  return std::nullopt;
}

PCochain2 p_differential1(const LRContext& ctx, const PCochain1& c) {
  const PrimeField& f = ctx.R.field();
  const std::size_t nl = ctx.dim_l();
  PCochain2 out = zero_p_cochain(ctx);
  out.mu = d_ce(ctx.morph.LL, c.gamma);
  for (std::uint64_t i = 0; i < out.omega.size(); ++i) {
    Vec x = element_from_index(f.p(), nl, i);
    Vec v = ctx.R.L.ad(x).power(f.p() - 1).apply(c.gamma.eval({x}));
    f.axpy(v, f.neg(1), c.gamma.eval({ctx.R.L.pmap(x)}));
    out.omega[i] = v;
  }
  for (std::size_t i = 0; i < nl; ++i) {
    Vec t = ctx.rho_coords(c.gamma.at_basis({i}));
    f.axpy(t, f.neg(1), ctx.G.lie().bracket(ctx.rho_coords(unit(nl, i)), c.d));
    out.theta.set_value(i, t);
  }
  return out;
}

bool verify_trivial_p_cocycle(const LRContext& ctx, const PCochain2& c, const PCochain1& candidate,
                              const PVerifierOptions& opt) {
  if (auto v = p_c1_violation(ctx, candidate, opt)) throw DomainError("candidate is not a degree-1 cochain: " + *v);
  PCochain2 img = p_differential1(ctx, candidate);
  return img.mu == c.mu && img.theta == c.theta && img.omega == c.omega;
}

}  // namespace rlr
