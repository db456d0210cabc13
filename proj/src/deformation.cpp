#include "rlr/deformation.hpp"

#include <functional>
#include <sstream>

namespace rlr {

TruncatedSeries TruncatedSeries::constant(const Vec& c, std::size_t order) {
  TruncatedSeries s = zero(c.size(), order);
  s.coeffs[0] = c;
  return s;
}

TruncatedSeries TruncatedSeries::zero(std::size_t dim, std::size_t order) {
  return TruncatedSeries{std::vector<Vec>(order + 1, Vec(dim, 0))};
}

TruncatedSeries series_mul(const AlgebraPresentation& A, const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.order() != b.order()) throw InputError("series_mul: order mismatch");
  const PrimeField& f = A.field();
  TruncatedSeries out = TruncatedSeries::zero(A.dim(), a.order());
  for (std::size_t i = 0; i <= a.order(); ++i)
    for (std::size_t k = 0; i + k <= a.order(); ++k) f.axpy(out.coeffs[i + k], 1, A.multiply(a.coeffs[i], b.coeffs[k]));
  return out;
}

TruncatedSeries SeriesDerivation::operator()(const TruncatedSeries& s) const {
  TruncatedSeries out = s;
  for (auto& c : out.coeffs) c = d_.apply(c);
  return out;
}

SeriesDerivation extend_derivation(const Derivation& d) { return SeriesDerivation(d); }

namespace {

using LSeries = std::vector<Vec>;
using MSeries = std::vector<Matrix>;

std::string idx_str(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

void require_char2(const LRContext& ctx, const char* what) {
  if (ctx.R.p() != 2) throw DomainError(std::string(what) + " is implemented for p = 2");
}

/// Series arithmetic over a fixed deformation, truncated at its order.
class SeriesOps {
 public:
  SeriesOps(const LRContext& ctx, const TruncatedDeformation& d)
      : ctx_(ctx), d_(d), f_(ctx.R.field()), n_(d.order()) {}

  std::size_t order() const { return n_; }
  std::size_t nl() const { return ctx_.dim_l(); }
  std::size_t na() const { return ctx_.R.A.dim(); }
  const PrimeField& field() const { return f_; }

  LSeries constant(const Vec& x) const {
    LSeries s(n_ + 1, Vec(x.size(), 0));
    s[0] = x;
    return s;
  }

  LSeries mu(const LSeries& u, const LSeries& v) const {
    LSeries out(n_ + 1, Vec(nl(), 0));
    for (std::size_t j = 0; j <= n_; ++j) {
      if (f_.is_zero(u[j])) continue;
      for (std::size_t l = 0; j + l <= n_; ++l) {
        if (f_.is_zero(v[l])) continue;
        for (std::size_t i = 0; i + j + l <= n_; ++i) f_.axpy(out[i + j + l], 1, d_.mu[i].eval({u[j], v[l]}));
      }
    }
    return out;
  }

  LSeries omega(const Vec& x) const {
    LSeries out(n_ + 1);
    const auto id = index_of_element(f_.p(), x);
    for (std::size_t k = 0; k <= n_; ++k) out[k] = d_.omega[k].at(id);
    return out;
  }

  Matrix rho_coef(std::size_t k, std::span<const Scalar> v) const {
    Matrix m(f_, na(), na());
    for (std::size_t j = 0; j < nl(); ++j)
      if (v[j]) m = m + d_.rho[k][j].scaled(v[j]);
    return m;
  }

  MSeries rho(const LSeries& u) const {
    MSeries out(n_ + 1, Matrix(f_, na(), na()));
    for (std::size_t i = 0; i <= n_; ++i)
      for (std::size_t j = 0; i + j <= n_; ++j)
        if (!f_.is_zero(u[j])) out[i + j] = out[i + j] + rho_coef(i, u[j]);
    return out;
  }

  MSeries mul(const MSeries& a, const MSeries& b) const {
    MSeries out(n_ + 1, Matrix(f_, na(), na()));
    for (std::size_t i = 0; i <= n_; ++i)
      for (std::size_t j = 0; i + j <= n_; ++j) out[i + j] = out[i + j] + a[i] * b[j];
    return out;
  }

  MSeries power(const MSeries& a, std::size_t e) const {
    MSeries out(n_ + 1, Matrix(f_, na(), na()));
    out[0] = Matrix::identity(f_, na());
    for (std::size_t k = 0; k < e; ++k) out = mul(out, a);
    return out;
  }

  /// Sum of a_i(x_j) over i + j = k, for an operator series acting on L-series.
  LSeries act(const std::vector<Vec>& a, const LSeries& x) const {
    LSeries out(n_ + 1, Vec(nl(), 0));
    for (std::size_t i = 0; i <= n_; ++i)
      for (std::size_t j = 0; i + j <= n_; ++j) f_.axpy(out[i + j], 1, ctx_.R.act(a[i], x[j]));
    return out;
  }

  /// s_1 + ... + s_{p-1} of the restricted structure (mu_t, omega_t).
  LSeries jacobson_sum(const Vec& x, const Vec& y) const {
    const std::uint32_t p = f_.p();
    std::vector<LSeries> poly{constant(x)};
    LSeries cx = constant(x), cy = constant(y);
    for (std::uint32_t step = 0; step + 1 < p; ++step) {
      std::vector<LSeries> next(poly.size() + 1, LSeries(n_ + 1, Vec(nl(), 0)));
      for (std::size_t k = 0; k < poly.size(); ++k) {
        add(next[k], mu(cy, poly[k]));
        add(next[k + 1], mu(cx, poly[k]));
      }
      poly = std::move(next);
    }
    LSeries out(n_ + 1, Vec(nl(), 0));
    for (std::uint32_t i = 1; i < p; ++i) {
      const Scalar c = f_.inv(i % p);
      for (std::size_t k = 0; k <= n_; ++k) f_.axpy(out[k], c, poly[i - 1][k]);
    }
    return out;
  }

  void add(LSeries& a, const LSeries& b, Scalar c = 1) const {
    for (std::size_t k = 0; k <= n_; ++k) f_.axpy(a[k], c, b[k]);
  }

 private:
  const LRContext& ctx_;
  const TruncatedDeformation& d_;
  PrimeField f_;
  std::size_t n_;
};

std::vector<Vec> flatten_series(const MSeries& m) {
  std::vector<Vec> out;
  for (const auto& x : m) out.push_back(flatten(x));
  return out;
}

struct Instance {
  std::string where;
  std::vector<Vec> residual;  // one entry per t-degree
};

struct Condition {
  std::string name;
  bool partial = false;
  std::vector<Instance> instances;
};

std::string vstr(std::span<const Scalar> v) { return to_string(v); }

std::vector<Condition> evaluate_conditions(const LRContext& ctx, const TruncatedDeformation& d) {
  SeriesOps s(ctx, d);
  const PrimeField& f = s.field();
  const std::uint32_t p = f.p();
  const std::size_t nl = s.nl(), na = s.na(), N = s.order();
  const Scalar m1 = f.neg(1);
  const auto budget = ctx.budget.evaluations;
  std::vector<Condition> out;

  {
    Condition c{"jacobi", false, {}};
    Combinations triples(nl, 3);
    for (const auto& t : triples.all()) {
      LSeries x = s.constant(unit(nl, t[0])), y = s.constant(unit(nl, t[1])), z = s.constant(unit(nl, t[2]));
      LSeries r = s.mu(x, s.mu(y, z));
      s.add(r, s.mu(y, s.mu(z, x)));
      s.add(r, s.mu(z, s.mu(x, y)));
      c.instances.push_back({"basis triple " + idx_str(t), r});
    }
    out.push_back(std::move(c));
  }
  {
    Condition c{"mu(x, omega(y)) = p-fold mu(..mu(x,y)..,y)", false, {}};
    auto ys = quantifier_sets(p, {nl}, budget);
    c.partial = ys[0].partial;
    for (std::size_t i = 0; i < nl; ++i)
      for (const Vec& y : ys[0].elements) {
        LSeries x = s.constant(unit(nl, i)), cy = s.constant(y);
        LSeries r = s.mu(x, s.omega(y));
        LSeries fold = x;
        for (std::uint32_t k = 0; k < p; ++k) fold = s.mu(fold, cy);
        s.add(r, fold, m1);
        c.instances.push_back({"x=" + std::to_string(i) + " y=" + vstr(y), r});
      }
    out.push_back(std::move(c));
  }
  {
    Condition c{"rho(mu(x,y)) = [rho(x), rho(y)]", false, {}};
    Combinations pairs(nl, 2);
    for (const auto& t : pairs.all()) {
      LSeries x = s.constant(unit(nl, t[0])), y = s.constant(unit(nl, t[1]));
      MSeries lhs = s.rho(s.mu(x, y));
      MSeries rx = s.rho(x), ry = s.rho(y);
      MSeries xy = s.mul(rx, ry), yx = s.mul(ry, rx);
      for (std::size_t k = 0; k <= N; ++k) lhs[k] = lhs[k] - xy[k] + yx[k];
      c.instances.push_back({"basis pair " + idx_str(t), flatten_series(lhs)});
    }
    out.push_back(std::move(c));
  }
  {
    Condition c{"rho(omega(x)) = rho(x)^p", false, {}};
    auto xs = quantifier_sets(p, {nl}, budget);
    c.partial = xs[0].partial;
    for (const Vec& x : xs[0].elements) {
      MSeries lhs = s.rho(s.omega(x));
      MSeries rhs = s.power(s.rho(s.constant(x)), p);
      for (std::size_t k = 0; k <= N; ++k) lhs[k] = lhs[k] - rhs[k];
      c.instances.push_back({"x=" + vstr(x), flatten_series(lhs)});
    }
    out.push_back(std::move(c));
  }
  {
    Condition c{"omega(ax) = a^p omega(x) + rho(ax)^(p-1)(a) x", false, {}};
    auto sets = quantifier_sets(p, {na, nl}, budget);
    c.partial = sets[0].partial || sets[1].partial;
    for (const Vec& a : sets[0].elements)
      for (const Vec& x : sets[1].elements) {
        LSeries r = s.omega(ctx.R.act(a, x));
        LSeries ap = s.act(s.constant(ctx.R.A.power(a, p)), s.omega(x));
        s.add(r, ap, m1);
        MSeries pw = s.power(s.rho(s.constant(ctx.R.act(a, x))), p - 1);
        std::vector<Vec> coeff;
        for (const auto& m : pw) coeff.push_back(m.apply(a));
        s.add(r, s.act(coeff, s.constant(x)), m1);
        c.instances.push_back({"a=" + vstr(a) + " x=" + vstr(x), r});
      }
    out.push_back(std::move(c));
  }
  {
    Condition c{"mu(x, ay) = a mu(x,y) + rho(x)(a) y", false, {}};
    for (std::size_t i = 0; i < nl; ++i)
      for (std::size_t a = 0; a < na; ++a)
        for (std::size_t j = 0; j < nl; ++j) {
          Vec ea = unit(na, a);
          LSeries x = s.constant(unit(nl, i)), y = s.constant(unit(nl, j));
          LSeries r = s.mu(x, s.constant(ctx.R.act(ea, unit(nl, j))));
          s.add(r, s.act(s.constant(ea), s.mu(x, y)), m1);
          MSeries rx = s.rho(x);
          std::vector<Vec> coeff;
          for (const auto& m : rx) coeff.push_back(m.apply(ea));
          s.add(r, s.act(coeff, y), m1);
          c.instances.push_back({"x=" + std::to_string(i) + " a=" + std::to_string(a) + " y=" + std::to_string(j), r});
        }
    out.push_back(std::move(c));
  }
  {
    Condition c{"omega(x+y) = omega(x) + omega(y) + sum s_i(x,y)", false, {}};
    auto sets = quantifier_sets(p, {nl, nl}, budget);
    c.partial = sets[0].partial || sets[1].partial;
    for (const Vec& x : sets[0].elements)
      for (const Vec& y : sets[1].elements) {
        LSeries r = s.omega(f.added(x, y));
        s.add(r, s.omega(x), m1);
        s.add(r, s.omega(y), m1);
        s.add(r, s.jacobson_sum(x, y), m1);
        c.instances.push_back({"x=" + vstr(x) + " y=" + vstr(y), r});
      }
    out.push_back(std::move(c));
  }
  {
    Condition c{"omega(lambda x) = lambda^p omega(x)", false, {}};
    auto xs = quantifier_sets(p, {nl}, budget);
    c.partial = xs[0].partial;
    for (const Vec& x : xs[0].elements)
      for (Scalar l = 0; l < p; ++l) {
        LSeries r = s.omega(f.scaled(l, x));
        s.add(r, s.omega(x), f.neg(f.frobenius(l)));
        c.instances.push_back({"lambda=" + std::to_string(l) + " x=" + vstr(x), r});
      }
    out.push_back(std::move(c));
  }
  return out;
}

CEChain bracket_chain(const LiePresentation& L) {
  CEChain c(L.field(), 2, L.dim(), L.dim());
  for (std::size_t t = 0; t < c.tuple_count(); ++t)
    c.set_value(t, L.bracket(unit(L.dim(), c.tuple(t)[0]), unit(L.dim(), c.tuple(t)[1])));
  return c;
}

std::vector<Vec> pmap_table(const LRContext& ctx) {
  const auto size = checked_power(ctx.R.p(), ctx.dim_l(), ctx.budget.evaluations, "omega table over L");
  std::vector<Vec> t(size);
  for (std::uint64_t i = 0; i < size; ++i) t[i] = ctx.R.L.pmap(element_from_index(ctx.R.p(), ctx.dim_l(), i));
  return t;
}

TruncatedDeformation truncated(const TruncatedDeformation& d, std::size_t order) {
  TruncatedDeformation out;
  out.mu.assign(d.mu.begin(), d.mu.begin() + static_cast<long>(order + 1));
  out.omega.assign(d.omega.begin(), d.omega.begin() + static_cast<long>(order + 1));
  out.rho.assign(d.rho.begin(), d.rho.begin() + static_cast<long>(order + 1));
  return out;
}

/// Residuals of the degree-2 LR conditions for p >= 3: mu(x,ay) on basis
/// triples and A-linearity of theta.
Vec p_c2_residuals(const LRContext& ctx, const PCochain2& c) {
  const PrimeField& f = ctx.R.field();
  const std::size_t nl = ctx.dim_l(), na = ctx.R.A.dim();
  Vec out;
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t a = 0; a < na; ++a) {
      Vec ea = unit(na, a), x = unit(nl, i);
      for (std::size_t j = 0; j < nl; ++j) {
        Vec y = unit(nl, j);
        Vec r = c.mu.eval({x, ctx.R.act(ea, y)});
        f.axpy(r, f.neg(1), ctx.R.act(ea, c.mu.eval({x, y})));
        f.axpy(r, f.neg(1), ctx.R.act(ctx.G.to_matrix(c.theta.at_basis({i})).apply(ea), y));
        out.insert(out.end(), r.begin(), r.end());
      }
      Vec r = flatten(ctx.G.to_matrix(c.theta.eval({ctx.R.act(ea, x)})));
      f.axpy(r, f.neg(1), flatten(ctx.R.scale(ea, ctx.G.to_matrix(c.theta.at_basis({i})))));
      out.insert(out.end(), r.begin(), r.end());
    }
  return out;
}

}  // namespace

TruncatedDeformation undeformed(const LRContext& ctx, std::size_t order) {
  TruncatedDeformation d;
  const PrimeField& f = ctx.R.field();
  const std::size_t nl = ctx.dim_l(), na = ctx.R.A.dim();
  d.mu.push_back(bracket_chain(ctx.R.L));
  d.omega.push_back(pmap_table(ctx));
  d.rho.push_back(ctx.R.anchor);
  for (std::size_t k = 1; k <= order; ++k) {
    d.mu.emplace_back(f, 2, nl, nl);
    d.omega.emplace_back(d.omega[0].size(), Vec(nl, 0));
    d.rho.emplace_back(nl, Matrix(f, na, na));
  }
  return d;
}

void append_coefficient(const LRContext& ctx, TruncatedDeformation& d, const PCochain2& c) {
  d.mu.push_back(c.mu);
  d.omega.push_back(c.omega);
  std::vector<Matrix> r;
  for (std::size_t j = 0; j < ctx.dim_l(); ++j) r.push_back(ctx.G.to_matrix(c.theta.at_basis({j})));
  d.rho.push_back(std::move(r));
}

PCochain2 coefficient(const LRContext& ctx, const TruncatedDeformation& d, std::size_t k) {
  if (k > d.order()) throw InputError("coefficient index beyond the deformation order");
  PCochain2 c{d.mu[k], d.omega[k], CEChain(ctx.R.field(), 1, ctx.dim_l(), ctx.dim_g())};
  for (std::size_t j = 0; j < ctx.dim_l(); ++j) c.theta.set_value(j, ctx.G.coordinates(d.rho[k][j]));
  return c;
}

LRCochain lr_coefficient(const LRContext& ctx, const TruncatedDeformation& d, std::size_t k) {
  require_char2(ctx, "lr_coefficient");
  PCochain2 c = coefficient(ctx, d, k);
  LRCochain out = zero_lr_cochain(ctx, 2);
  out.first.phi = c.mu;
  for (std::size_t i = 0; i < ctx.dim_l(); ++i) out.first.omega[i].set_value(0, c.omega_at(2, unit(ctx.dim_l(), i)));
  out.third.phi = c.theta;
  return out;
}

TruncatedDeformation order_one(const LRContext& ctx, const LRCochain& c) {
  return order_one(ctx, p_cochain_from_lr(ctx, c));
}

TruncatedDeformation order_one(const LRContext& ctx, const PCochain2& c) {
  TruncatedDeformation d = undeformed(ctx, 0);
  append_coefficient(ctx, d, c);
  return d;
}

void validate_coefficients(const LRContext& ctx, const TruncatedDeformation& d) {
  const std::size_t nl = ctx.dim_l(), na = ctx.R.A.dim();
  const std::uint64_t size = saturating_power(ctx.R.p(), nl);
  if (d.omega.size() != d.mu.size() || d.rho.size() != d.mu.size() || d.mu.empty())
    throw InputError("deformation coefficient lists have different lengths");
  for (std::size_t k = 0; k <= d.order(); ++k) {
    const std::string at = "coefficient " + std::to_string(k);
    if (d.mu[k].degree() != 2 || d.mu[k].src_dim() != nl || d.mu[k].tgt_dim() != nl)
      throw InputError(at + ": mu has the wrong shape");
    if (d.omega[k].size() != size) throw InputError(at + ": omega must list every element of L");
    if (d.rho[k].size() != nl) throw InputError(at + ": rho needs one matrix per basis vector");
    for (const Matrix& m : d.rho[k])
      if (m.rows() != na || m.cols() != na) throw InputError(at + ": rho matrices must be dim A x dim A");
  }
  for (std::size_t k = 1; k <= d.order(); ++k) {
    const std::string at = "coefficient " + std::to_string(k) + " is not in C2_LR: ";
    PCochain2 c = [&] {
      try {
        return coefficient(ctx, d, k);
      } catch (const DomainError&) {
        throw DomainError(at + "rho_" + std::to_string(k) + " is not Der(A)-valued");
      }
    }();
    if (ctx.R.p() == 2) {
      LRCochain lr = lr_coefficient(ctx, d, k);
      if (auto v = lr_first_violation(ctx, lr)) throw DomainError(at + v->constraint + " at " + v->instance);
      for (std::uint64_t i = 0; i < size; ++i) {
        Vec x = element_from_index(2, nl, i);
        if (lr.first.eval_omega(x, {}) != d.omega[k][i])
          throw DomainError(at + "omega is not polarized by mu at x=" + to_string(x));
      }
    } else if (!ctx.R.field().is_zero(p_c2_residuals(ctx, c))) {
      throw DomainError(at + "mu(x,ay) = a mu(x,y) + theta(x)(a) y or A-linearity of theta fails");
    }
  }
}

Report check_deformation(const LRContext& ctx, const TruncatedDeformation& d, const DeformationCheckOptions& opt) {
  if (opt.validate) validate_coefficients(ctx, d);
  Report rep;
  rep.title = "deformation of order " + std::to_string(d.order()) + " of " + ctx.R.name;
  const PrimeField& f = ctx.R.field();
  for (const Condition& c : evaluate_conditions(ctx, d))
    for (std::size_t k = 0; k <= d.order(); ++k) {
      Check& ch = rep.add(c.name + " [t^" + std::to_string(k) + "]");
      ch.partial = c.partial;
      for (const Instance& inst : c.instances)
        if (!f.is_zero(inst.residual[k])) {
          ch.passed = false;
          ch.witness = inst.where + ", residual " + to_string(inst.residual[k]);
          break;
        }
    }
  rep.set_dimension("order", static_cast<long long>(d.order()));
  return rep;
}

Vec deformation_residual(const LRContext& ctx, const TruncatedDeformation& d, std::size_t k) {
  if (k > d.order()) throw InputError("deformation_residual: degree beyond the order");
  Vec out;
  for (const Condition& c : evaluate_conditions(ctx, d))
    for (const Instance& inst : c.instances) out.insert(out.end(), inst.residual[k].begin(), inst.residual[k].end());
  return out;
}

// ---------------------------------------------------------------------------

namespace {

class ObstructionBuilder {
 public:
  ObstructionBuilder(const LRContext& ctx, const TruncatedDeformation& d, ObstructionVariant v)
      : ctx_(ctx), d_(d), v_(v), f_(ctx.R.field()), n_(d.order()) {}

  Obstructions run() {
    const std::size_t nl = ctx_.dim_l(), ng = ctx_.dim_g();
    Obstructions o{CEChain(f_, 3, nl, nl), {}, CEChain(f_, 2, nl, ng), {}, true};
    if (f_.p() != 2 && n_ != 1) throw DomainError("obstructions for p >= 3 are defined for order-1 deformations");
    const auto size = d_.omega[0].size();
    for (std::size_t t = 0; t < o.obs1.tuple_count(); ++t) o.obs1.set_value(t, obs1(o.obs1.tuple(t)));
    for (std::size_t t = 0; t < o.mobs1.tuple_count(); ++t) {
      const auto& T = o.mobs1.tuple(t);
      o.mobs1.set_value(t, ctx_.G.coordinates(mobs1(e(T[0]), e(T[1]))));
    }
    for (std::uint64_t i = 0; i < size; ++i) {
      Vec x = element_from_index(f_.p(), nl, i);
      std::vector<Vec> row;
      for (std::size_t j = 0; j < nl; ++j) row.push_back(obs2(x, e(j)));
      o.obs2.push_back(std::move(row));
      o.mobs2.push_back(ctx_.G.coordinates(mobs2(x)));
    }
    o.obs2_evaluated = f_.p() == 2;
    return o;
  }

 private:
  Vec e(std::size_t i) const { return unit(ctx_.dim_l(), i); }
  Vec mu(std::size_t i, const Vec& x, const Vec& y) const { return d_.mu[i].eval({x, y}); }
  Vec omega(std::size_t i, const Vec& x) const { return d_.omega[i].at(index_of_element(f_.p(), x)); }
  Matrix rho(std::size_t i, std::span<const Scalar> x) const {
    Matrix m(f_, ctx_.R.A.dim(), ctx_.R.A.dim());
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j]) m = m + d_.rho[i][j].scaled(x[j]);
    return m;
  }
  static Matrix comm(const Matrix& a, const Matrix& b) { return a * b - b * a; }
  Matrix ad_pow(const Matrix& D, Matrix E, std::size_t k) const {
    for (std::size_t i = 0; i < k; ++i) E = comm(D, E);
    return E;
  }
  Scalar m1() const { return f_.neg(1); }

  Vec obs1(const std::vector<std::size_t>& T) const {
    const Vec x = e(T[0]), y = e(T[1]), z = e(T[2]);
    Vec r(ctx_.dim_l(), 0);
    auto cyc = [&](std::size_t i, std::size_t j) {
      Vec s = mu(i, x, mu(j, y, z));
      f_.axpy(s, 1, mu(i, y, mu(j, z, x)));
      f_.axpy(s, 1, mu(i, z, mu(j, x, y)));
      return s;
    };
    if (f_.p() == 2) {
      for (std::size_t i = 1; i <= n_; ++i) f_.axpy(r, 1, cyc(i, n_ + 1 - i));
    } else {
      f_.axpy(r, m1(), cyc(1, 1));
    }
    return r;
  }

  Vec obs2(const Vec& x, const Vec& y) const {
    Vec r(ctx_.dim_l(), 0);
    if (f_.p() == 2) {
      for (std::size_t i = 1; i <= n_; ++i) {
        f_.axpy(r, 1, mu(i, y, omega(n_ + 1 - i, x)));
        f_.axpy(r, 1, mu(i, mu(n_ + 1 - i, y, x), x));
      }
      return r;
    }
    // Frobenius slot x, linear slot y: mu_1(y, omega_1(x)) - mu_1(mu_1(y,x),x).
    r = mu(1, y, omega(1, x));
    f_.axpy(r, m1(), mu(1, mu(1, y, x), x));
    return r;
  }

  Matrix mobs1(const Vec& x, const Vec& y) const {
    const std::size_t na = ctx_.R.A.dim();
    Matrix r(f_, na, na);
    if (f_.p() == 2) {
      for (std::size_t i = 1; i <= n_; ++i) r = r + rho(i, mu(n_ + 1 - i, x, y));
      for (std::size_t i = 1; i <= n_; ++i) r = r + comm(rho(i, x), rho(n_ + 1 - i, y));
      return r;
    }
    if (v_ == ObstructionVariant::AsPrinted) return comm(rho(1, x), rho(1, y)) - rho(0, mu(1, x, y));
    return comm(rho(1, x), rho(1, y)) - rho(1, mu(1, x, y));
  }

  Matrix mobs2(const Vec& x) const {
    const std::size_t na = ctx_.R.A.dim();
    const std::uint32_t p = f_.p();
    Matrix r(f_, na, na);
    if (p == 2) {
      for (std::size_t i = 1; i <= n_; ++i) r = r + rho(i, omega(n_ + 1 - i, x));
      for (std::size_t i = 1; 2 * i < n_ + 1; ++i) r = r + comm(rho(i, x), rho(n_ + 1 - i, x));
      if (v_ == ObstructionVariant::Complete && (n_ + 1) % 2 == 0) {
        Matrix h = rho((n_ + 1) / 2, x);
        r = r + h * h;
      }
      return r;
    }
    const Matrix r0 = rho(0, x), r1 = rho(1, x);
    if (v_ == ObstructionVariant::AsPrinted) {
      r = ad_pow(r0, r1, p - 1) - rho(0, omega(1, x));
      for (std::uint32_t i = 0; i + 2 <= p; ++i) r = r - ad_pow(r0, comm(r1, ad_pow(r0, r1, p - 2 - i)), i);
      return r;
    }
    for (std::uint32_t i = 0; i + 2 <= p; ++i)
      for (std::uint32_t j = 0; i + j + 2 <= p; ++j)
        r = r + r0.power(i) * r1 * r0.power(j) * r1 * r0.power(p - 2 - i - j);
    return r - rho(1, omega(1, x));
  }

  const LRContext& ctx_;
  const TruncatedDeformation& d_;
  ObstructionVariant v_;
  PrimeField f_;
  std::size_t n_;
};

/// alpha_{mu,0}(theta) = rho o mu - d1_CE theta (Der(A) coordinates).
CEChain alpha_chain(const LRContext& ctx, const CEChain& mu, const CEChain& theta) {
  const PrimeField& f = ctx.R.field();
  CEChain out = d_ce(ctx.morph.LM, theta);
  for (std::size_t t = 0; t < out.tuple_count(); ++t) {
    Vec r = ctx.rho_coords(mu.value(t));
    f.axpy(r, f.neg(1), out.value(t));
    out.set_value(t, r);
  }
  return out;
}

/// beta_{omega,0}(theta)(x) = theta(x^[p]) + rho(omega(x)) - ad_{rho(x)}^{p-1} theta(x).
Vec beta_at(const LRContext& ctx, const PCochain2& c, const Vec& x) {
  const PrimeField& f = ctx.R.field();
  Vec r = c.theta.eval({ctx.R.L.pmap(x)});
  f.axpy(r, 1, ctx.rho_coords(c.omega_at(f.p(), x)));
  Matrix D = ctx.R.rho(x), E = ctx.G.to_matrix(c.theta.eval({x}));
  for (std::uint32_t i = 0; i + 1 < f.p(); ++i) E = D * E - E * D;
  f.axpy(r, f.neg(1), ctx.G.coordinates(E));
  return r;
}

}  // namespace

Obstructions obstructions(const LRContext& ctx, const TruncatedDeformation& d, ObstructionVariant variant) {
  if (d.order() == 0) throw InputError("obstructions need a deformation of order at least 1");
  return ObstructionBuilder(ctx, d, variant).run();
}

Report obstruction_identities(const LRContext& ctx, const TruncatedDeformation& extended, ObstructionVariant variant) {
  if (extended.order() < 2) throw InputError("obstruction_identities needs an extension of order at least 2");
  const std::size_t n = extended.order() - 1;
  const PrimeField& f = ctx.R.field();
  const std::size_t nl = ctx.dim_l();
  Obstructions o = obstructions(ctx, truncated(extended, n), variant);
  PCochain2 next = coefficient(ctx, extended, n + 1);
  Report rep;
  rep.title = "obstructions at order " + std::to_string(n + 1);
  auto where = [](const std::string& s) { return [s] { return s; }; };
  auto compare = [&](Check& ch, std::span<const Scalar> lhs, std::span<const Scalar> rhs,
                     const std::function<std::string()>& at) {
    if (ch.passed && !std::equal(lhs.begin(), lhs.end(), rhs.begin(), rhs.end())) {
      ch.passed = false;
      ch.witness = at() + ": " + to_string(lhs) + " vs " + to_string(rhs);
    }
  };

  if (f.p() == 2) {
    LRCochain lr = lr_coefficient(ctx, extended, n + 1);
    ResCochain D = d_res(ctx.morph.LL, lr.first);
    Check& c1 = rep.add("(obs1, obs2) = d2_res(mu_{n+1}, omega_{n+1})");
    for (std::size_t t = 0; t < o.obs1.tuple_count(); ++t)
      compare(c1, o.obs1.value(t), D.phi.value(t), where("obs1 at " + idx_str(o.obs1.tuple(t))));
    for (std::size_t i = 0; i < o.obs2.size(); ++i) {
      Vec x = element_from_index(2, nl, i);
      for (std::size_t j = 0; j < nl; ++j)
        compare(c1, o.obs2[i][j], D.eval_omega(x, {unit(nl, j)}), where("obs2 at x=" + to_string(x) + " y=" + std::to_string(j)));
    }
    ResCochain AB = alpha_beta(ctx.morph, lr.first, ResCochain(f, 2, ctx.dim_g(), ctx.dim_g()), lr.third);
    Check& c2 = rep.add("(mobs1, mobs2) = (alpha(rho_{n+1}), beta(rho_{n+1}))");
    for (std::size_t t = 0; t < o.mobs1.tuple_count(); ++t)
      compare(c2, o.mobs1.value(t), AB.phi.value(t), where("mobs1 at " + idx_str(o.mobs1.tuple(t))));
    for (std::size_t i = 0; i < o.mobs2.size(); ++i) {
      Vec x = element_from_index(2, nl, i);
      compare(c2, o.mobs2[i], AB.eval_omega(x, {}), where("mobs2 at x=" + to_string(x)));
    }
    return rep;
  }

  Check& c1 = rep.add("obs1 = d2_CE mu_2");
  CEChain dmu = d_ce(ctx.morph.LL, next.mu);
  for (std::size_t t = 0; t < o.obs1.tuple_count(); ++t)
    compare(c1, o.obs1.value(t), dmu.value(t), where("obs1 at " + idx_str(o.obs1.tuple(t))));
  rep.notes.push_back("obs2 = ind^2 part of d2_res(mu_2, omega_2) not evaluated: its formula is an external reference");
  Check& c2 = rep.add("mobs1 = alpha_{mu_2,0}(rho_2)");
  CEChain al = alpha_chain(ctx, next.mu, next.theta);
  for (std::size_t t = 0; t < o.mobs1.tuple_count(); ++t)
    compare(c2, o.mobs1.value(t), al.value(t), where("mobs1 at " + idx_str(o.mobs1.tuple(t))));
  Check& c3 = rep.add("mobs2 = beta_{omega_2,0}(rho_2)");
  for (std::size_t i = 0; i < o.mobs2.size(); ++i) {
    Vec x = element_from_index(f.p(), nl, i);
    compare(c3, o.mobs2[i], beta_at(ctx, next, x), where("mobs2 at x=" + to_string(x)));
  }
  rep.merge(order_two_hochschild(ctx, extended), "");
  return rep;
}

Report order_two_hochschild(const LRContext& ctx, const TruncatedDeformation& d) {
  if (d.order() < 2) throw InputError("order_two_hochschild needs a deformation of order at least 2");
  const PrimeField& f = ctx.R.field();
  const std::uint32_t p = f.p();
  const std::size_t nl = ctx.dim_l(), na = ctx.R.A.dim();
  Report rep;
  Check& ch = rep.add("omega_2(ax) - a^p omega_2(x) = a^(p-1) (sum rho^i rho_2 rho^(p-2-i) + sum rho^i rho_1 rho^j rho_1 rho^k)(a) x");
  auto sets = quantifier_sets(p, {na, nl}, ctx.budget.evaluations);
  ch.partial = sets[0].partial || sets[1].partial;
  auto rho = [&](std::size_t k, const Vec& x) {
    Matrix m(f, na, na);
    for (std::size_t j = 0; j < nl; ++j)
      if (x[j]) m = m + d.rho[k][j].scaled(x[j]);
    return m;
  };
  auto omega = [&](std::size_t k, const Vec& x) { return d.omega[k].at(index_of_element(p, x)); };
  for (const Vec& a : sets[0].elements)
    for (const Vec& x : sets[1].elements) {
      const Matrix r0 = rho(0, x), r1 = rho(1, x), r2 = rho(2, x);
      Matrix S(f, na, na);
      for (std::uint32_t i = 0; i + 2 <= p; ++i) S = S + r0.power(i) * r2 * r0.power(p - 2 - i);
      for (std::uint32_t i = 0; i + 3 <= p; ++i)
        for (std::uint32_t j = 0; i + j + 3 <= p; ++j) S = S + r0.power(i) * r1 * r0.power(j) * r1 * r0.power(p - 3 - i - j);
      Vec coeff = ctx.R.A.multiply(ctx.R.A.power(a, p - 1), S.apply(a));
      Vec r = omega(2, ctx.R.act(a, x));
      f.axpy(r, f.neg(1), ctx.R.act(ctx.R.A.power(a, p), omega(2, x)));
      f.axpy(r, f.neg(1), ctx.R.act(coeff, x));
      if (ch.passed && !f.is_zero(r)) {
        ch.passed = false;
        ch.witness = "a=" + to_string(a) + " x=" + to_string(x) + ", residual " + to_string(r);
      }
    }
  return rep;
}

std::optional<TruncatedDeformation> extend(const LRContext& ctx, const TruncatedDeformation& d) {
  validate_coefficients(ctx, d);
  const PrimeField& f = ctx.R.field();
  const std::size_t n = d.order(), nl = ctx.dim_l();
  const bool char2 = f.p() == 2;
  const PCochain2 shape = zero_p_cochain(ctx);
  const std::size_t n_mu = shape.mu.coordinate_count(), n_om = shape.omega.size() * nl,
                    n_th = shape.theta.coordinate_count();
  const std::size_t chart = char2 ? lr_coordinate_count(ctx, 2) : n_mu + n_om + n_th;

  auto cochain_of = [&](std::span<const Scalar> u) {
    if (char2) return p_cochain_from_lr(ctx, lr_cochain_from_coordinates(ctx, 2, u));
    PCochain2 c = shape;
    c.mu.set_coordinates(u.subspan(0, n_mu));
    for (std::size_t i = 0; i < c.omega.size(); ++i)
      c.omega[i].assign(u.begin() + static_cast<long>(n_mu + i * nl), u.begin() + static_cast<long>(n_mu + (i + 1) * nl));
    c.theta.set_coordinates(u.subspan(n_mu + n_om, n_th));
    return c;
  };
  auto rows_of = [&](std::span<const Scalar> u) {
    PCochain2 c = cochain_of(u);
    Vec r;
    if (char2) {
      for (const auto& inst : lr_constraint_instances(ctx, lr_cochain_from_coordinates(ctx, 2, u)))
        r.insert(r.end(), inst.residual.begin(), inst.residual.end());
    } else {
      r = p_c2_residuals(ctx, c);
    }
    TruncatedDeformation e = d;
    append_coefficient(ctx, e, c);
    Vec res = deformation_residual(ctx, e, n + 1);
    r.insert(r.end(), res.begin(), res.end());
    return r;
  };

  const Vec zero(chart, 0);
  const Vec r0 = rows_of(zero);
  Matrix M = matrix_of(f, chart, r0.size(), [&](const Vec& u) {
    Vec r = rows_of(u);
    f.axpy(r, f.neg(1), r0);
    return r;
  });
  auto sol = solve(M, f.negated(r0));
  if (!sol) return std::nullopt;
  TruncatedDeformation out = d;
  append_coefficient(ctx, out, cochain_of(*sol));
  return out;
}

// ---------------------------------------------------------------------------

FormalAutomorphism FormalAutomorphism::inverse() const {
  const PrimeField& f = phi.at(0).field();
  const std::size_t n = phi[0].rows();
  std::vector<Matrix> psi{Matrix::identity(f, n)};
  for (std::size_t k = 1; k < phi.size(); ++k) {
    Matrix s(f, n, n);
    for (std::size_t j = 1; j <= k; ++j) s = s + phi[j] * psi[k - j];
    psi.push_back(s.scaled(f.neg(1)));
  }
  return FormalAutomorphism{psi};
}

void validate_automorphism(const LRContext& ctx, const FormalAutomorphism& phi) {
  const PrimeField& f = ctx.R.field();
  const std::size_t nl = ctx.dim_l();
  if (phi.phi.empty() || !(phi.phi[0] == Matrix::identity(f, nl)))
    throw DomainError("formal automorphism must start with the identity");
  for (std::size_t k = 1; k < phi.phi.size(); ++k) {
    if (phi.phi[k].rows() != nl || phi.phi[k].cols() != nl) throw InputError("automorphism coefficient has the wrong shape");
    for (std::size_t a = 0; a < ctx.R.A.dim(); ++a) {
      Matrix act = ctx.R.action.matrix(unit(ctx.R.A.dim(), a));
      if (!(phi.phi[k] * act == act * phi.phi[k]))
        throw DomainError("phi_" + std::to_string(k) + " is not A-linear (a = e_" + std::to_string(a) + ")");
    }
  }
}

TruncatedDeformation transport(const LRContext& ctx, const TruncatedDeformation& d, const FormalAutomorphism& phi) {
  require_char2(ctx, "transport");
  validate_automorphism(ctx, phi);
  const PrimeField& f = ctx.R.field();
  const std::size_t N = d.order(), nl = ctx.dim_l();
  std::vector<Matrix> ph = phi.phi;
  ph.resize(N + 1, Matrix(f, nl, nl));
  const FormalAutomorphism inv = FormalAutomorphism{ph}.inverse();
  SeriesOps s(ctx, d);

  auto apply = [&](const std::vector<Matrix>& ops, const LSeries& u) {
    LSeries out(N + 1, Vec(nl, 0));
    for (std::size_t i = 0; i <= N; ++i)
      for (std::size_t j = 0; i + j <= N; ++j) f.axpy(out[i + j], 1, ops[i].apply(u[j]));
    return out;
  };
  auto pulled = [&](const Vec& x) { return apply(inv.phi, s.constant(x)); };
  // omega_t on a series argument, through polarization by mu_t.
  auto omega_series = [&](const LSeries& u) {
    LSeries out(N + 1, Vec(nl, 0));
    for (std::size_t l = 0; 2 * l <= N; ++l) {
      LSeries w = s.omega(u[l]);
      for (std::size_t k = 0; k + 2 * l <= N; ++k) f.axpy(out[k + 2 * l], 1, w[k]);
    }
    for (std::size_t l = 0; l <= N; ++l)
      for (std::size_t m = l + 1; l + m <= N; ++m) {
        LSeries w = s.mu(s.constant(u[l]), s.constant(u[m]));
        for (std::size_t k = 0; k + l + m <= N; ++k) f.axpy(out[k + l + m], 1, w[k]);
      }
    return out;
  };

  TruncatedDeformation out = undeformed(ctx, N);
  for (std::size_t t = 0; t < out.mu[0].tuple_count(); ++t) {
    const auto& T = out.mu[0].tuple(t);
    LSeries v = apply(ph, s.mu(pulled(unit(nl, T[0])), pulled(unit(nl, T[1]))));
    for (std::size_t k = 0; k <= N; ++k) out.mu[k].set_value(t, v[k]);
  }
  for (std::uint64_t i = 0; i < out.omega[0].size(); ++i) {
    LSeries v = apply(ph, omega_series(pulled(element_from_index(2, nl, i))));
    for (std::size_t k = 0; k <= N; ++k) out.omega[k][i] = v[k];
  }
  for (std::size_t j = 0; j < nl; ++j) {
    MSeries r = s.rho(pulled(unit(nl, j)));
    for (std::size_t k = 0; k <= N; ++k) out.rho[k][j] = r[k];
  }
  return out;
}

bool is_trivial_infinitesimal(const LRContext& ctx, const TruncatedDeformation& d) {
  require_char2(ctx, "is_trivial_infinitesimal");
  if (d.order() == 0) return true;
  SubspaceBasis B = map_subspace(lr_differential_matrix(ctx, 1), lr_cochain_space(ctx, 1));
  return B.contains(lr_coefficient(ctx, d, 1).coordinates());
}

}  // namespace rlr
