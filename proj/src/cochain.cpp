#include "rlr/cochain.hpp"

namespace rlr {

namespace {

struct Term {
  std::size_t index;
  Scalar coef;
};

std::vector<Term> support(std::span<const Scalar> v) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out.push_back({i, v[i]});
  return out;
}

std::vector<Vec> basis_vectors(std::size_t n, const std::vector<std::size_t>& idx) {
  std::vector<Vec> out;
  for (auto i : idx) out.push_back(unit(n, i));
  return out;
}

template <class T>
std::vector<T> without(const std::vector<T>& v, std::size_t pos) {
  std::vector<T> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i != pos) out.push_back(v[i]);
  return out;
}

template <class T>
std::vector<T> without(const std::vector<T>& v, std::size_t p1, std::size_t p2) {
  std::vector<T> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i != p1 && i != p2) out.push_back(v[i]);
  return out;
}

template <class T>
std::vector<T> prepend(T head, const std::vector<T>& tail) {
  std::vector<T> out{std::move(head)};
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

void require_char2(const PrimeField& f, const char* what) {
  if (f.p() != 2) throw DomainError(std::string(what) + " is defined in characteristic 2 only");
}

}  // namespace

// --- CEChain -----------------------------------------------------------------

CEChain::CEChain(PrimeField field, std::size_t degree, std::size_t src_dim, std::size_t tgt_dim)
    : field_(field),
      degree_(degree),
      src_(src_dim),
      tgt_(tgt_dim),
      tuples_(std::make_shared<const Combinations>(src_dim, degree)),
      values_(tuples_->size() * tgt_dim, 0) {}

void CEChain::set_value(std::size_t t, std::span<const Scalar> v) {
  if (v.size() != tgt_) throw InputError("cochain value has wrong length");
  for (std::size_t k = 0; k < tgt_; ++k) values_.at(t * tgt_ + k) = field_.reduce(v[k]);
}

Vec CEChain::at_basis(std::vector<std::size_t> idx) const {
  if (idx.size() != degree_) throw InputError("cochain arity mismatch");
  int sign = sort_with_sign(idx);
  if (sign == 0) return Vec(tgt_, 0);
  auto v = value(tuples_->index_of(idx));
  Vec out(v.begin(), v.end());
  return sign < 0 ? field_.negated(out) : out;
}

void CEChain::set_basis(const std::vector<std::size_t>& increasing, std::span<const Scalar> v) {
  set_value(tuples_->index_of(increasing), v);
}

Vec CEChain::eval(const std::vector<Vec>& args) const {
  if (args.size() != degree_) throw InputError("cochain arity mismatch");
  Vec out(tgt_, 0);
  std::vector<std::vector<Term>> sup;
  for (const auto& a : args) {
    if (a.size() != src_) throw InputError("cochain argument has wrong length");
    sup.push_back(support(a));
    if (sup.back().empty()) return out;
  }
  std::vector<std::size_t> pos(degree_, 0), idx(degree_);
  while (true) {
    Scalar c = 1;
    for (std::size_t k = 0; k < degree_; ++k) {
      idx[k] = sup[k][pos[k]].index;
      c = field_.mul(c, sup[k][pos[k]].coef);
    }
    field_.axpy(out, c, at_basis(idx));
    std::size_t k = 0;
    while (k < degree_ && ++pos[k] == sup[k].size()) pos[k++] = 0;
    if (k == degree_) break;
  }
  return out;
}

void CEChain::set_coordinates(std::span<const Scalar> coords) {
  if (coords.size() != values_.size()) throw InputError("cochain coordinate count mismatch");
  for (std::size_t i = 0; i < coords.size(); ++i) values_[i] = field_.reduce(coords[i]);
}

void CEChain::add(const CEChain& o) {
  if (o.degree_ != degree_ || o.src_ != src_ || o.tgt_ != tgt_) throw InputError("cochain shape mismatch");
  field_.axpy(values_, 1, o.values_);
}

// --- ResCochain --------------------------------------------------------------

ResCochain::ResCochain(PrimeField field, std::size_t degree, std::size_t src_dim, std::size_t tgt_dim)
    : phi(field, degree, src_dim, tgt_dim) {
  if (degree >= 2)
    for (std::size_t i = 0; i < src_dim; ++i) omega.emplace_back(field, degree - 2, src_dim, tgt_dim);
}

std::size_t res_coordinate_count(std::size_t degree, std::size_t src_dim, std::size_t tgt_dim) {
  std::size_t n = binomial(src_dim, degree) * tgt_dim;
  if (degree >= 2) n += src_dim * binomial(src_dim, degree - 2) * tgt_dim;
  return n;
}

Vec ResCochain::eval_omega(const Vec& x, const std::vector<Vec>& Z) const {
  if (!has_omega()) throw InputError("omega is defined from degree 2 on");
  if (Z.size() + 2 != degree()) throw InputError("omega arity mismatch");
  const PrimeField& f = field();
  Vec out(tgt_dim(), 0);
  auto sx = support(x);
  for (std::size_t a = 0; a < sx.size(); ++a) {
    const auto& [i, ci] = sx[a];
    f.axpy(out, f.mul(ci, ci), omega[i].eval(Z));
    for (std::size_t b = a + 1; b < sx.size(); ++b) {
      const auto& [j, cj] = sx[b];
      auto args = prepend(unit(src_dim(), j), Z);
      args = prepend(unit(src_dim(), i), args);
      f.axpy(out, f.mul(ci, cj), phi.eval(args));
    }
  }
  return out;
}

Vec ResCochain::omega_at_basis(std::size_t i, const std::vector<std::size_t>& J) const {
  return omega.at(i).at_basis(J);
}

std::size_t ResCochain::coordinate_count() const noexcept {
  std::size_t n = phi.coordinate_count();
  for (const auto& w : omega) n += w.coordinate_count();
  return n;
}

Vec ResCochain::coordinates() const {
  Vec v = phi.coordinates();
  for (const auto& w : omega) v.insert(v.end(), w.coordinates().begin(), w.coordinates().end());
  return v;
}

void ResCochain::set_coordinates(std::span<const Scalar> coords) {
  if (coords.size() != coordinate_count()) throw InputError("restricted cochain coordinate count mismatch");
  std::size_t off = 0;
  phi.set_coordinates(coords.subspan(off, phi.coordinate_count()));
  off += phi.coordinate_count();
  for (auto& w : omega) {
    w.set_coordinates(coords.subspan(off, w.coordinate_count()));
    off += w.coordinate_count();
  }
}

bool ResCochain::is_zero() const noexcept {
  if (!phi.is_zero()) return false;
  for (const auto& w : omega)
    if (!w.is_zero()) return false;
  return true;
}

void ResCochain::add(const ResCochain& o) {
  phi.add(o.phi);
  if (o.omega.size() != omega.size()) throw InputError("cochain shape mismatch");
  for (std::size_t i = 0; i < omega.size(); ++i) omega[i].add(o.omega[i]);
}

// --- contexts ----------------------------------------------------------------

Matrix ModuleContext::act(std::span<const Scalar> x) const {
  Matrix m(L.field(), dim, dim);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) m = m + action[i].scaled(x[i]);
  return m;
}

ModuleContext adjoint_context(const LiePresentation& L) {
  ModuleContext ctx{L, L.dim(), {}};
  for (std::size_t i = 0; i < L.dim(); ++i) ctx.action.push_back(L.ad(unit(L.dim(), i)));
  return ctx;
}

ModuleContext pullback_context(const LiePresentation& L, const LiePresentation& M, const Matrix& phi) {
  if (phi.rows() != M.dim() || phi.cols() != L.dim()) throw InputError("morphism matrix has wrong shape");
  ModuleContext ctx{L, M.dim(), {}};
  for (std::size_t i = 0; i < L.dim(); ++i) ctx.action.push_back(M.ad(phi.column(i)));
  return ctx;
}

// --- differentials -----------------------------------------------------------

CEChain d_ce(const ModuleContext& ctx, const CEChain& c) {
  const PrimeField& f = c.field();
  const std::size_t n = c.degree(), d = c.src_dim();
  CEChain out(f, n + 1, d, c.tgt_dim());
  for (std::size_t t = 0; t < out.tuple_count(); ++t) {
    const auto& T = out.tuple(t);
    Vec acc(c.tgt_dim(), 0);
    for (std::size_t i = 0; i <= n; ++i) {
      Vec v = ctx.action[T[i]].apply(c.at_basis(without(T, i)));
      f.axpy(acc, i % 2 == 0 ? 1 : f.neg(1), v);
    }
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j) {
        Vec br = ctx.L.bracket(unit(d, T[i]), unit(d, T[j]));
        Vec v = c.eval(prepend(br, basis_vectors(d, without(T, i, j))));
        f.axpy(acc, (i + j) % 2 == 0 ? 1 : f.neg(1), v);
      }
    out.set_value(t, acc);
  }
  return out;
}

std::vector<CEChain> delta_restricted(const ModuleContext& ctx, const ResCochain& c) {
  const std::size_t n = c.degree(), d = c.src_dim(), m = c.tgt_dim();
  const PrimeField& f = c.field();
  std::vector<CEChain> out;
  if (n == 0) return out;
  require_char2(f, "delta");
  for (std::size_t a = 0; a < d; ++a) {
    const Vec x = unit(d, a);
    const Vec x2 = ctx.L.pmap_on_basis()[a];
    const Matrix& xact = ctx.action[a];
    CEChain w(f, n - 1, d, m);
    if (n == 1) {
      Vec v = c.phi.eval({x2});
      f.axpy(v, 1, xact.apply(c.phi.at_basis({a})));
      w.set_value(0, v);
      out.push_back(std::move(w));
      continue;
    }
    for (std::size_t t = 0; t < w.tuple_count(); ++t) {
      const auto& J = w.tuple(t);  // z_2, ..., z_n
      const auto Z = basis_vectors(d, J);
      Vec acc = xact.apply(c.phi.eval(prepend(x, Z)));
      f.axpy(acc, 1, c.phi.eval(prepend(x2, Z)));
      for (std::size_t i = 0; i < J.size(); ++i) {
        f.axpy(acc, 1, ctx.action[J[i]].apply(c.omega_at_basis(a, without(J, i))));
        Vec br = ctx.L.bracket(x, Z[i]);
        f.axpy(acc, 1, c.phi.eval(prepend(br, prepend(x, without(Z, i)))));
        for (std::size_t j = i + 1; j < J.size(); ++j) {
          Vec zz = ctx.L.bracket(Z[i], Z[j]);
          f.axpy(acc, 1, c.omega[a].eval(prepend(zz, without(Z, i, j))));
        }
      }
      w.set_value(t, acc);
    }
    out.push_back(std::move(w));
  }
  return out;
}

ResCochain d_res(const ModuleContext& ctx, const ResCochain& c) {
  ResCochain out(c.field(), c.degree() + 1, c.src_dim(), c.tgt_dim());
  out.phi = d_ce(ctx, c.phi);
  if (out.has_omega()) out.omega = delta_restricted(ctx, c);
  return out;
}

ResCochain push_forward(const Matrix& T, const ResCochain& c) {
  if (T.cols() != c.tgt_dim()) throw InputError("push_forward: shape mismatch");
  ResCochain out(c.field(), c.degree(), c.src_dim(), T.rows());
  for (std::size_t t = 0; t < c.phi.tuple_count(); ++t) out.phi.set_value(t, T.apply(c.phi.value(t)));
  for (std::size_t i = 0; i < c.omega.size(); ++i)
    for (std::size_t t = 0; t < c.omega[i].tuple_count(); ++t)
      out.omega[i].set_value(t, T.apply(c.omega[i].value(t)));
  return out;
}

ResCochain pull_back(const ResCochain& c, const Matrix& S) {
  if (S.rows() != c.src_dim()) throw InputError("pull_back: shape mismatch");
  const std::size_t d = S.cols();
  std::vector<Vec> img;
  for (std::size_t i = 0; i < d; ++i) img.push_back(S.column(i));
  auto images = [&](const std::vector<std::size_t>& idx) {
    std::vector<Vec> out;
    for (auto i : idx) out.push_back(img[i]);
    return out;
  };
  ResCochain out(c.field(), c.degree(), d, c.tgt_dim());
  for (std::size_t t = 0; t < out.phi.tuple_count(); ++t) out.phi.set_value(t, c.phi.eval(images(out.phi.tuple(t))));
  for (std::size_t b = 0; b < out.omega.size(); ++b)
    for (std::size_t t = 0; t < out.omega[b].tuple_count(); ++t)
      out.omega[b].set_value(t, c.eval_omega(img[b], images(out.omega[b].tuple(t))));
  return out;
}

// --- morphism complex --------------------------------------------------------

MorphismContext make_morphism_context(const LiePresentation& L, const LiePresentation& M, const Matrix& phi) {
  return MorphismContext{adjoint_context(L), adjoint_context(M), pullback_context(L, M, phi), phi};
}

std::size_t MorphismCochain::coordinate_count() const noexcept {
  return first.coordinate_count() + second.coordinate_count() + third.coordinate_count();
}

Vec MorphismCochain::coordinates() const {
  Vec v = first.coordinates();
  for (const ResCochain* c : {&second, &third}) {
    Vec w = c->coordinates();
    v.insert(v.end(), w.begin(), w.end());
  }
  return v;
}

void MorphismCochain::set_coordinates(std::span<const Scalar> coords) {
  if (coords.size() != coordinate_count()) throw InputError("morphism cochain coordinate count mismatch");
  std::size_t off = 0;
  for (ResCochain* c : {&first, &second, &third}) {
    c->set_coordinates(coords.subspan(off, c->coordinate_count()));
    off += c->coordinate_count();
  }
}

MorphismCochain zero_morphism_cochain(const MorphismContext& ctx, std::size_t degree) {
  if (degree == 0) throw InputError("morphism cochains start in degree 1");
  const PrimeField& f = ctx.LL.L.field();
  const std::size_t dl = ctx.LL.dim, dm = ctx.MM.dim;
  return MorphismCochain{ResCochain(f, degree, dl, dl), ResCochain(f, degree, dm, dm),
                         ResCochain(f, degree - 1, dl, dm)};
}

ResCochain alpha_beta(const MorphismContext& ctx, const ResCochain& first, const ResCochain& second,
                      const ResCochain& third) {
  if (first.degree() != second.degree() || third.degree() + 1 != first.degree())
    throw InputError("alpha_beta: component degrees do not match");
  ResCochain out = push_forward(ctx.phi, first);
  out.add(pull_back(second, ctx.phi));
  out.add(d_res(ctx.LM, third));
  return out;
}

MorphismCochain fd_res(const MorphismContext& ctx, const MorphismCochain& m) {
  require_char2(ctx.LL.L.field(), "the morphism complex");
  return MorphismCochain{d_res(ctx.LL, m.first), d_res(ctx.MM, m.second),
                         alpha_beta(ctx, m.first, m.second, m.third)};
}

}  // namespace rlr
