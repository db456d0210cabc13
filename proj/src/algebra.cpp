#include "rlr/algebra.hpp"

#include "rlr/enumerate.hpp"

namespace rlr {

namespace {

std::vector<std::string> default_labels(std::vector<std::string> labels, std::size_t dim,
                                        const std::string& stem) {
  if (labels.empty())
    for (std::size_t i = 0; i < dim; ++i) labels.push_back(stem + std::to_string(i + 1));
  if (labels.size() != dim) throw InputError("label count does not match dimension");
  return labels;
}

void require_index(std::size_t i, std::size_t n, const char* what) {
  if (i >= n) throw InputError(std::string(what) + " index " + std::to_string(i) + " out of range");
}

void require_length(std::span<const Scalar> v, std::size_t n, const char* what) {
  if (v.size() != n)
    throw InputError(std::string(what) + ": expected a vector of length " + std::to_string(n) +
                     ", got " + std::to_string(v.size()));
}

}  // namespace

// --- AlgebraPresentation -----------------------------------------------------

AlgebraPresentation::AlgebraPresentation(std::string name, PrimeField field, std::size_t dim,
                                         std::vector<std::string> labels)
    : name_(std::move(name)),
      field_(field),
      dim_(dim),
      labels_(default_labels(std::move(labels), dim, "e")),
      c_(dim * dim * dim, 0) {}

void AlgebraPresentation::set_coef(std::size_t i, std::size_t j, std::size_t k, Scalar v) {
  require_index(i, dim_, "A");
  require_index(j, dim_, "A");
  require_index(k, dim_, "A");
  c_[(i * dim_ + j) * dim_ + k] = field_.reduce(v);
}

void AlgebraPresentation::set_product(std::size_t i, std::size_t j, const Vec& value) {
  require_length(value, dim_, "product");
  for (std::size_t k = 0; k < dim_; ++k) {
    set_coef(i, j, k, value[k]);
    set_coef(j, i, k, value[k]);
  }
}

Vec AlgebraPresentation::multiply(std::span<const Scalar> a, std::span<const Scalar> b) const {
  require_length(a, dim_, "multiply");
  require_length(b, dim_, "multiply");
  Vec out(dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (b[j] == 0) continue;
      Scalar s = field_.mul(a[i], b[j]);
      const Scalar* row = &c_[(i * dim_ + j) * dim_];
      for (std::size_t k = 0; k < dim_; ++k) out[k] = field_.add(out[k], field_.mul(s, row[k]));
    }
  }
  return out;
}

Vec AlgebraPresentation::power(std::span<const Scalar> a, std::uint64_t e) const {
  if (e == 0) throw DomainError("zeroth power in a possibly non-unital algebra");
  Vec r(a.begin(), a.end());
  for (std::uint64_t i = 1; i < e; ++i) r = multiply(r, a);
  return r;
}

Matrix AlgebraPresentation::left_multiplication(std::span<const Scalar> a) const {
  Matrix m(field_, dim_, dim_);
  for (std::size_t b = 0; b < dim_; ++b) {
    Vec col = multiply(a, unit(dim_, b));
    for (std::size_t k = 0; k < dim_; ++k) m(k, b) = col[k];
  }
  return m;
}

// --- LiePresentation ---------------------------------------------------------

LiePresentation::LiePresentation(PrimeField field, std::size_t dim, std::vector<std::string> labels)
    : field_(field),
      dim_(dim),
      labels_(default_labels(std::move(labels), dim, "x")),
      b_(dim * dim * dim, 0),
      pmap_(dim, Vec(dim, 0)) {}

void LiePresentation::set_coef(std::size_t i, std::size_t j, std::size_t k, Scalar v) {
  require_index(i, dim_, "L");
  require_index(j, dim_, "L");
  require_index(k, dim_, "L");
  b_[(i * dim_ + j) * dim_ + k] = field_.reduce(v);
}

void LiePresentation::set_bracket(std::size_t i, std::size_t j, const Vec& value) {
  require_length(value, dim_, "bracket");
  for (std::size_t k = 0; k < dim_; ++k) {
    set_coef(i, j, k, value[k]);
    set_coef(j, i, k, field_.neg(field_.reduce(value[k])));
  }
}

void LiePresentation::set_pmap(std::size_t i, const Vec& value) {
  require_index(i, dim_, "p-map");
  require_length(value, dim_, "p-map");
  Vec v(dim_);
  for (std::size_t k = 0; k < dim_; ++k) v[k] = field_.reduce(value[k]);
  pmap_[i] = std::move(v);
}

Vec LiePresentation::bracket(std::span<const Scalar> u, std::span<const Scalar> v) const {
  require_length(u, dim_, "bracket");
  require_length(v, dim_, "bracket");
  Vec out(dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (v[j] == 0) continue;
      Scalar s = field_.mul(u[i], v[j]);
      const Scalar* row = &b_[(i * dim_ + j) * dim_];
      for (std::size_t k = 0; k < dim_; ++k) out[k] = field_.add(out[k], field_.mul(s, row[k]));
    }
  }
  return out;
}

Matrix LiePresentation::ad(std::span<const Scalar> u) const {
  Matrix m(field_, dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    Vec col = bracket(u, unit(dim_, j));
    for (std::size_t k = 0; k < dim_; ++k) m(k, j) = col[k];
  }
  return m;
}

Vec LiePresentation::pmap(std::span<const Scalar> x) const {
  std::vector<std::size_t> order(dim_);
  for (std::size_t i = 0; i < dim_; ++i) order[i] = i;
  return pmap_in_order(x, order);
}

Vec LiePresentation::pmap_in_order(std::span<const Scalar> x,
                                   const std::vector<std::size_t>& order) const {
  require_length(x, dim_, "p-map");
  Vec result(dim_, 0), acc(dim_, 0);
  for (std::size_t i : order) {
    require_index(i, dim_, "p-map order");
    if (x[i] == 0) continue;
    Vec term = field_.scaled(x[i], unit(dim_, i));
    field_.axpy(result, field_.frobenius(x[i]), pmap_[i]);
    if (!field_.is_zero(acc))
      for (const Vec& s : compute_jacobson_si(*this, acc, term)) field_.axpy(result, 1, s);
    field_.axpy(acc, 1, term);
  }
  return result;
}

// --- ModuleAction ------------------------------------------------------------

ModuleAction::ModuleAction(PrimeField field, std::size_t dim_a, std::size_t dim_v)
    : field_(field), dim_a_(dim_a), dim_v_(dim_v), m_(dim_a * dim_v * dim_v, 0) {}

void ModuleAction::set_coef(std::size_t a, std::size_t j, std::size_t k, Scalar v) {
  require_index(a, dim_a_, "action A");
  require_index(j, dim_v_, "action L");
  require_index(k, dim_v_, "action L");
  m_[(a * dim_v_ + j) * dim_v_ + k] = field_.reduce(v);
}

void ModuleAction::set_action(std::size_t a, std::size_t j, const Vec& value) {
  require_length(value, dim_v_, "action");
  for (std::size_t k = 0; k < dim_v_; ++k) set_coef(a, j, k, value[k]);
}

Matrix ModuleAction::matrix(std::span<const Scalar> a) const {
  require_length(a, dim_a_, "action");
  Matrix m(field_, dim_v_, dim_v_);
  for (std::size_t i = 0; i < dim_a_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < dim_v_; ++j)
      for (std::size_t k = 0; k < dim_v_; ++k)
        m(k, j) = field_.add(m(k, j), field_.mul(a[i], coef(i, j, k)));
  }
  return m;
}

Vec ModuleAction::act(std::span<const Scalar> a, std::span<const Scalar> v) const {
  return matrix(a).apply(v);
}

// --- RLRAlgebra --------------------------------------------------------------

Derivation RLRAlgebra::rho(std::span<const Scalar> x) const {
  require_length(x, L.dim(), "anchor");
  Matrix out(field(), A.dim(), A.dim());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) out = out + anchor[i].scaled(x[i]);
  return out;
}

Derivation RLRAlgebra::scale(std::span<const Scalar> a, const Derivation& d) const {
  return A.left_multiplication(a) * d;
}

// --- Jacobson ----------------------------------------------------------------

std::vector<Vec> compute_jacobson_si(const LiePresentation& L, std::span<const Scalar> x,
                                     std::span<const Scalar> y) {
  const PrimeField& f = L.field();
  const std::size_t p = f.p();
  // poly[k] is the coefficient of lambda^k.
  std::vector<Vec> poly(p, Vec(L.dim(), 0));
  poly[0].assign(x.begin(), x.end());
  for (std::size_t step = 0; step + 1 < p; ++step) {
    std::vector<Vec> next(p, Vec(L.dim(), 0));
    for (std::size_t k = 0; k + 1 < p; ++k) {
      if (f.is_zero(poly[k])) continue;
      f.axpy(next[k], 1, L.bracket(y, poly[k]));
      f.axpy(next[k + 1], 1, L.bracket(x, poly[k]));
    }
    poly = std::move(next);
  }
  std::vector<Vec> s;
  for (std::size_t i = 1; i < p; ++i) s.push_back(f.scaled(f.inv(static_cast<Scalar>(i)), poly[i - 1]));
  return s;
}

LiePresentation extend_pmap(const LiePresentation& L, const std::vector<Vec>& images) {
  if (images.size() != L.dim()) throw InputError("extend_pmap: one image per basis vector required");
  LiePresentation out = L;
  for (std::size_t j = 0; j < L.dim(); ++j) {
    Matrix lhs = L.ad(unit(L.dim(), j)).power(L.field().p());
    if (!(lhs == L.ad(images[j])))
      throw DomainError("extend_pmap: (ad e_" + std::to_string(j) + ")^p is not ad of the given image");
    out.set_pmap(j, images[j]);
  }
  return out;
}

// --- Derivations -------------------------------------------------------------

Vec flatten(const Matrix& m) {
  Vec v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
  return v;
}

Matrix unflatten(const PrimeField& f, std::size_t n, std::span<const Scalar> v) {
  require_length(v, n * n, "matrix");
  Matrix m(f, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = v[r * n + c];
  return m;
}

SubspaceBasis compute_derivations(const AlgebraPresentation& A) {
  const PrimeField& f = A.field();
  const std::size_t n = A.dim();
  // Unknown d(k, b) sits at k*n + b. One row per (i, j, k):
  // sum_l c_ijl d(k,l) - sum_l d(l,i) c_ljk - sum_l d(l,j) c_ilk = 0.
  Matrix sys(f, n * n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        std::size_t r = (i * n + j) * n + k;
        for (std::size_t l = 0; l < n; ++l) {
          sys(r, k * n + l) = f.add(sys(r, k * n + l), A.coef(i, j, l));
          sys(r, l * n + i) = f.sub(sys(r, l * n + i), A.coef(l, j, k));
          sys(r, l * n + j) = f.sub(sys(r, l * n + j), A.coef(i, l, k));
        }
      }
  if (n == 0) return SubspaceBasis(f, 0);
  return kernel_basis(sys);
}

bool is_derivation(const AlgebraPresentation& A, const Matrix& d) {
  const std::size_t n = A.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Vec ei = unit(n, i), ej = unit(n, j);
      Vec lhs = d.apply(A.multiply(ei, ej));
      Vec rhs = A.field().added(A.multiply(d.apply(ei), ej), A.multiply(ei, d.apply(ej)));
      if (lhs != rhs) return false;
    }
  return true;
}

Derivation pth_power_derivation(const Derivation& d) { return d.power(d.field().p()); }

DerivationAlgebra::DerivationAlgebra(const AlgebraPresentation& A)
    : field_(A.field()),
      dim_a_(A.dim()),
      space_(compute_derivations(A)),
      lie_(A.field(), 0) {
  for (const Vec& v : space_.vectors()) mats_.push_back(unflatten(field_, dim_a_, v));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < mats_.size(); ++i) labels.push_back("D" + std::to_string(i + 1));
  lie_ = LiePresentation(field_, mats_.size(), labels);
  for (std::size_t i = 0; i < mats_.size(); ++i) {
    for (std::size_t j = i + 1; j < mats_.size(); ++j)
      lie_.set_bracket(i, j, coordinates(mats_[i] * mats_[j] - mats_[j] * mats_[i]));
    lie_.set_pmap(i, coordinates(pth_power_derivation(mats_[i])));
  }
}

Matrix DerivationAlgebra::to_matrix(std::span<const Scalar> coords) const {
  require_length(coords, mats_.size(), "derivation coordinates");
  Matrix m(field_, dim_a_, dim_a_);
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] != 0) m = m + mats_[i].scaled(coords[i]);
  return m;
}

Vec DerivationAlgebra::coordinates(const Matrix& d) const {
  auto c = space_.coordinates(flatten(d));
  if (!c) throw DomainError("matrix is not a derivation of A");
  return *c;
}

}  // namespace rlr
