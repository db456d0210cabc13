#include <sstream>

#include "rlr/cochain.hpp"

namespace rlr {

namespace {

std::string describe(std::initializer_list<std::pair<const char*, std::string>> parts) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : parts) {
    if (!first) os << ' ';
    os << k << '=' << v;
    first = false;
  }
  return os.str();
}

std::string idx_string(const std::vector<std::size_t>& idx) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i];
  os << ')';
  return os.str();
}

std::vector<Vec> basis_vectors(std::size_t n, const std::vector<std::size_t>& idx) {
  std::vector<Vec> out;
  for (auto i : idx) out.push_back(unit(n, i));
  return out;
}

/// Builds the instance list of one LR cochain.
class ConstraintWriter {
 public:
  ConstraintWriter(const LRContext& ctx, const LRCochain& c) : ctx_(ctx), c_(ctx.R.field()), ch_(c) {}

  std::vector<ConstraintInstance> run() {
    const std::size_t n = ch_.degree();
    if (n == 1) degree_one();
    if (n == 2) degree_two();
    if (n >= 3) higher();
    return std::move(out_);
  }

 private:
  const RLRAlgebra& R() const { return ctx_.R; }
  std::size_t na() const { return R().A.dim(); }
  std::size_t nl() const { return R().L.dim(); }

  Matrix der(std::span<const Scalar> g) const { return ctx_.G.to_matrix(g); }
  /// (a . D) in Der(A) coordinates.
  Vec scale_coords(const Vec& a, std::span<const Scalar> g) const {
    return ctx_.G.coordinates(R().scale(a, der(g)));
  }
  Vec square(const Vec& a) const { return R().A.multiply(a, a); }

  void emit(const char* name, std::string instance, Vec residual) {
    out_.push_back(ConstraintInstance{name, std::move(instance), std::move(residual)});
  }

  std::vector<ElementSet> exhaustive(const std::vector<std::size_t>& dims, const std::string& what) const {
    std::size_t total = 0;
    for (auto d : dims) total += d;
    checked_power(R().field().p(), total, ctx_.budget.evaluations, what);
    return quantifier_sets(R().field().p(), dims, ctx_.budget.evaluations);
  }

  void degree_one() {
    const auto& mu = ch_.first.phi;
    Matrix d = der(ch_.third.phi.value(0));
    for (std::size_t a = 0; a < na(); ++a)
      for (std::size_t i = 0; i < nl(); ++i) {
        Vec ea = unit(na(), a), x = unit(nl(), i);
        Vec r = mu.eval({R().act(ea, x)});
        c_.axpy(r, c_.neg(1), R().act(ea, mu.at_basis({i})));
        c_.axpy(r, c_.neg(1), R().act(d.apply(ea), x));
        emit("mu(ax) = a mu(x) + d(a) x", describe({{"a", std::to_string(a)}, {"x", std::to_string(i)}}), r);
      }
  }

  void degree_two() {
    const auto& mu = ch_.first.phi;
    const auto& theta = ch_.third.phi;
    for (std::size_t i = 0; i < nl(); ++i)
      for (std::size_t a = 0; a < na(); ++a)
        for (std::size_t j = 0; j < nl(); ++j) {
          Vec x = unit(nl(), i), ea = unit(na(), a), y = unit(nl(), j);
          Vec r = mu.eval({x, R().act(ea, y)});
          c_.axpy(r, c_.neg(1), R().act(ea, mu.eval({x, y})));
          c_.axpy(r, c_.neg(1), R().act(der(theta.at_basis({i})).apply(ea), y));
          emit("mu(x,ay) = a mu(x,y) + theta(x)(a) y",
               describe({{"x", std::to_string(i)}, {"a", std::to_string(a)}, {"y", std::to_string(j)}}), r);
        }
    theta_linear(theta);
    auto sets = exhaustive({na(), nl()}, "omega(ax) = a^2 omega(x) + theta(ax)(a) x over A x L");
    for (const Vec& a : sets[0].elements)
      for (const Vec& x : sets[1].elements) {
        Vec ax = R().act(a, x);
        Vec r = ch_.first.eval_omega(ax, {});
        c_.axpy(r, c_.neg(1), R().act(square(a), ch_.first.eval_omega(x, {})));
        c_.axpy(r, c_.neg(1), R().act(der(theta.eval({ax})).apply(a), x));
        emit("omega(ax) = a^2 omega(x) + theta(ax)(a) x", describe({{"a", to_string(a)}, {"x", to_string(x)}}), r);
      }
  }

  /// theta(x_1, ..., a x_k) = a theta(x_1, ..., x_k); by alternation the last slot suffices.
  void theta_linear(const CEChain& theta) {
    const std::size_t k = theta.degree();
    Combinations heads(nl(), k - 1);
    for (const auto& head : heads.all())
      for (std::size_t i = 0; i < nl(); ++i)
        for (std::size_t a = 0; a < na(); ++a) {
          Vec ea = unit(na(), a);
          auto args = basis_vectors(nl(), head);
          args.push_back(R().act(ea, unit(nl(), i)));
          Vec r = theta.eval(args);
          args.back() = unit(nl(), i);
          c_.axpy(r, c_.neg(1), scale_coords(ea, theta.eval(args)));
          auto tuple = head;
          tuple.push_back(i);
          emit("theta is A-linear", describe({{"x", idx_string(tuple)}, {"a", std::to_string(a)}}), r);
        }
  }

  void higher() {
    const std::size_t n = ch_.degree();
    const auto& mu = ch_.first.phi;
    const auto& theta = ch_.third.phi;
    Combinations heads(nl(), n - 1), zs(nl(), n - 2);

    for (const auto& head : heads.all())
      for (std::size_t i = 0; i < nl(); ++i)
        for (std::size_t a = 0; a < na(); ++a) {
          Vec ea = unit(na(), a), xn = unit(nl(), i);
          auto args = basis_vectors(nl(), head);
          args.push_back(R().act(ea, xn));
          Vec r = mu.eval(args);
          args.back() = xn;
          c_.axpy(r, c_.neg(1), R().act(ea, mu.eval(args)));
          c_.axpy(r, c_.neg(1), R().act(der(theta.at_basis(head)).apply(ea), xn));
          auto tuple = head;
          tuple.push_back(i);
          emit("mu(x_1,...,a x_n) = a mu(x_1,...,x_n) + theta(x_1,...,x_{n-1})(a) x_n",
               describe({{"x", idx_string(tuple)}, {"a", std::to_string(a)}}), r);
        }
    theta_linear(theta);

    auto sets = exhaustive({na(), nl()}, "omega(ax,Z) = a^2 omega(x,Z) + theta(ax,Z)(a) x over A x L");
    for (const auto& J : zs.all()) {
      auto Z = basis_vectors(nl(), J);
      for (const Vec& a : sets[0].elements)
        for (const Vec& x : sets[1].elements) {
          Vec ax = R().act(a, x);
          Vec r = ch_.first.eval_omega(ax, Z);
          c_.axpy(r, c_.neg(1), R().act(square(a), ch_.first.eval_omega(x, Z)));
          auto targs = Z;
          targs.insert(targs.begin(), ax);
          c_.axpy(r, c_.neg(1), R().act(der(theta.eval(targs)).apply(a), x));
          emit("omega(ax,Z) = a^2 omega(x,Z) + theta(ax,Z)(a) x",
               describe({{"a", to_string(a)}, {"x", to_string(x)}, {"Z", idx_string(J)}}), r);
        }
    }

    // First slot x kept, i-th Z-slot scaled.
    auto xs = exhaustive({nl()}, "omega(x,...,a z_i,...) over L");
    for (const auto& J : zs.all())
      for (std::size_t i = 0; i < J.size(); ++i)
        for (std::size_t a = 0; a < na(); ++a) {
          Vec ea = unit(na(), a);
          auto Z = basis_vectors(nl(), J);
          auto Zi = Z;
          Zi.erase(Zi.begin() + static_cast<std::ptrdiff_t>(i));
          auto Za = Z;
          Za[i] = R().act(ea, Z[i]);
          for (const Vec& x : xs[0].elements) {
            Vec r = ch_.first.eval_omega(x, Za);
            c_.axpy(r, c_.neg(1), R().act(ea, ch_.first.eval_omega(x, Z)));
            c_.axpy(r, c_.neg(1), R().act(der(ch_.third.eval_omega(x, Zi)).apply(ea), Z[i]));
            emit("omega(x,...,a z_i,...) = a omega(x,...,z_i,...) + gamma(x,...,^z_i,...)(a) z_i",
                 describe({{"x", to_string(x)}, {"Z", idx_string(J)}, {"i", std::to_string(i)},
                           {"a", std::to_string(a)}}),
                 r);
          }
        }
    gamma_linear(xs[0].elements);
  }

  /// gamma(x, ..., a z_i, ...) = a gamma(x, ..., z_i, ...) and
  /// gamma(ax, Z) = a^2 gamma(x, Z).
  void gamma_linear(const std::vector<Vec>& xs) {
    const ResCochain& g = ch_.third;
    if (!g.has_omega()) return;
    Combinations zs(nl(), g.degree() - 2);
    for (const auto& J : zs.all()) {
      auto Z = basis_vectors(nl(), J);
      for (std::size_t i = 0; i < J.size(); ++i)
        for (std::size_t a = 0; a < na(); ++a) {
          Vec ea = unit(na(), a);
          auto Za = Z;
          Za[i] = R().act(ea, Z[i]);
          for (const Vec& x : xs) {
            Vec r = g.eval_omega(x, Za);
            c_.axpy(r, c_.neg(1), scale_coords(ea, g.eval_omega(x, Z)));
            emit("gamma is A-linear in its Z-slots",
                 describe({{"x", to_string(x)}, {"Z", idx_string(J)}, {"i", std::to_string(i)},
                           {"a", std::to_string(a)}}),
                 r);
          }
        }
      auto sets = exhaustive({na(), nl()}, "gamma(ax,Z) = a^2 gamma(x,Z) over A x L");
      for (const Vec& a : sets[0].elements)
        for (const Vec& x : sets[1].elements) {
          Vec r = g.eval_omega(R().act(a, x), Z);
          c_.axpy(r, c_.neg(1), scale_coords(square(a), g.eval_omega(x, Z)));
          emit("gamma(ax,Z) = a^2 gamma(x,Z)", describe({{"a", to_string(a)}, {"x", to_string(x)}, {"Z", idx_string(J)}}),
               r);
        }
    }
  }

  const LRContext& ctx_;
  PrimeField c_;
  const LRCochain& ch_;
  std::vector<ConstraintInstance> out_;
};

}  // namespace

LRContext make_lr_context(const RLRAlgebra& R, EnumerationBudget budget) {
  DerivationAlgebra G(R.A);
  Matrix phi(R.field(), G.dim(), R.L.dim());
  for (std::size_t i = 0; i < R.L.dim(); ++i) {
    Vec c = G.coordinates(R.anchor.at(i));
    for (std::size_t k = 0; k < G.dim(); ++k) phi(k, i) = c[k];
  }
  MorphismContext morph = make_morphism_context(R.L, G.lie(), phi);
  return LRContext{R, std::move(G), std::move(morph), budget};
}

std::size_t LRCochain::coordinate_count() const noexcept {
  return first.coordinate_count() + third.coordinate_count();
}

Vec LRCochain::coordinates() const {
  Vec v = first.coordinates();
  Vec w = third.coordinates();
  v.insert(v.end(), w.begin(), w.end());
  return v;
}

void LRCochain::set_coordinates(std::span<const Scalar> coords) {
  if (coords.size() != coordinate_count()) throw InputError("LR cochain coordinate count mismatch");
  first.set_coordinates(coords.subspan(0, first.coordinate_count()));
  third.set_coordinates(coords.subspan(first.coordinate_count()));
}

LRCochain zero_lr_cochain(const LRContext& ctx, std::size_t degree) {
  if (degree == 0) throw InputError("LR cochains start in degree 1");
  const PrimeField& f = ctx.R.field();
  return LRCochain{ResCochain(f, degree, ctx.dim_l(), ctx.dim_l()),
                   ResCochain(f, degree - 1, ctx.dim_l(), ctx.dim_g())};
}

LRCochain lr_cochain_from_coordinates(const LRContext& ctx, std::size_t degree, std::span<const Scalar> coords) {
  LRCochain c = zero_lr_cochain(ctx, degree);
  c.set_coordinates(coords);
  return c;
}

std::size_t lr_coordinate_count(const LRContext& ctx, std::size_t degree) {
  return res_coordinate_count(degree, ctx.dim_l(), ctx.dim_l()) +
         res_coordinate_count(degree - 1, ctx.dim_l(), ctx.dim_g());
}

std::vector<ConstraintInstance> lr_constraint_instances(const LRContext& ctx, const LRCochain& c) {
  if (ctx.R.field().p() != 2) throw DomainError("the LR cochain constraints are implemented for p = 2");
  return ConstraintWriter(ctx, c).run();
}

std::optional<ConstraintInstance> lr_first_violation(const LRContext& ctx, const LRCochain& c) {
  for (auto& inst : lr_constraint_instances(ctx, c))
    if (!ctx.R.field().is_zero(inst.residual)) return inst;
  return std::nullopt;
}

MorphismCochain lr_embed(const LRContext& ctx, const LRCochain& c) {
  MorphismCochain m = zero_morphism_cochain(ctx.morph, c.degree());
  m.first = c.first;
  m.third = c.third;
  return m;
}

LRCochain lr_project(const LRContext& ctx, const MorphismCochain& m) {
  if (!m.second.is_zero()) throw DomainError("lr_project: the Der(A) component is nonzero");
  LRCochain c{m.first, m.third};
  if (auto v = lr_first_violation(ctx, c))
    throw DomainError("lr_project: constraint '" + v->constraint + "' fails at " + v->instance);
  return c;
}

LRCochain lr_differential(const LRContext& ctx, const LRCochain& c, bool validate) {
  if (validate)
    if (auto v = lr_first_violation(ctx, c))
      throw DomainError("lr_differential: input violates '" + v->constraint + "' at " + v->instance);
  MorphismCochain image = fd_res(ctx.morph, lr_embed(ctx, c));
  if (!image.second.is_zero()) throw Error("lr_differential: image has a nonzero Der(A) component");
  LRCochain out{image.first, image.third};
  if (validate)
    if (auto v = lr_first_violation(ctx, out))
      throw Error("lr_differential: output violates '" + v->constraint + "' at " + v->instance);
  return out;
}

}  // namespace rlr
