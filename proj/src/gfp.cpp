#include "rlr/gfp.hpp"

#include <algorithm>
#include <sstream>

namespace rlr {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p, std::uint32_t max_modulus) : p_(p) {
  if (!is_prime(p)) throw DomainError("modulus " + std::to_string(p) + " is not prime");
  if (p > max_modulus)
    throw DomainError("modulus " + std::to_string(p) + " exceeds the configured bound " +
                      std::to_string(max_modulus));
}

Scalar PrimeField::pow(Scalar a, std::uint64_t e) const noexcept {
  Scalar result = 1 % p_;
  Scalar base = a % p_;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

Scalar PrimeField::inv(Scalar a) const {
  if (a % p_ == 0) throw DomainError("inversion of zero in GF(" + std::to_string(p_) + ")");
  return pow(a, p_ - 2);
}

void PrimeField::axpy(Vec& y, Scalar a, std::span<const Scalar> x) const {
  if (a == 0) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) y[i] = add(y[i], mul(a, x[i]));
}

Vec PrimeField::added(std::span<const Scalar> x, std::span<const Scalar> y) const {
  Vec r(x.begin(), x.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = add(r[i], y[i]);
  return r;
}

Vec PrimeField::scaled(Scalar a, std::span<const Scalar> x) const {
  Vec r(x.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mul(a, x[i]);
  return r;
}

Vec PrimeField::negated(std::span<const Scalar> x) const {
  Vec r(x.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = neg(x[i]);
  return r;
}

bool PrimeField::is_zero(std::span<const Scalar> x) const noexcept {
  return std::all_of(x.begin(), x.end(), [](Scalar s) { return s == 0; });
}

// --- FieldElement -----------------------------------------------------------

FieldElement::FieldElement(long long value, std::uint32_t modulus) : modulus_(modulus) {
  if (!is_prime(modulus)) throw DomainError("modulus " + std::to_string(modulus) + " is not prime");
  value_ = PrimeField(modulus, modulus).reduce(value);
}

void FieldElement::require_same(const FieldElement& o) const {
  if (modulus_ != o.modulus_)
    throw DomainError("modulus mismatch: " + std::to_string(modulus_) + " vs " +
                      std::to_string(o.modulus_));
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same(o);
  return {static_cast<long long>(value_) + o.value_, modulus_};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same(o);
  return {static_cast<long long>(value_) - o.value_, modulus_};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same(o);
  return {static_cast<long long>(value_) * o.value_, modulus_};
}
FieldElement FieldElement::operator-() const { return {-static_cast<long long>(value_), modulus_}; }
FieldElement FieldElement::inv() const {
  PrimeField f(modulus_, modulus_);
  return {f.inv(value_), modulus_};
}
FieldElement FieldElement::frobenius() const {
  PrimeField f(modulus_, modulus_);
  return {f.frobenius(value_), modulus_};
}

// --- Matrix -----------------------------------------------------------------

Matrix::Matrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(PrimeField field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(PrimeField field, std::size_t cols, const std::vector<Vec>& rows) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InputError("row length mismatch in Matrix::from_rows");
    std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r * cols));
  }
  return m;
}

Matrix Matrix::from_columns(PrimeField field, std::size_t rows, const std::vector<Vec>& cols) {
  Matrix m(field, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw InputError("column length mismatch in Matrix::from_columns");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Vec Matrix::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw InputError("matrix product shape mismatch");
  Matrix m(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      Scalar a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        m(i, j) = field_.add(m(i, j), field_.mul(a, o(k, j)));
    }
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix sum shape mismatch");
  Matrix m = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = field_.add(data_[i], o.data_[i]);
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix difference shape mismatch");
  Matrix m = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = field_.sub(data_[i], o.data_[i]);
  return m;
}

Matrix Matrix::scaled(Scalar a) const {
  Matrix m = *this;
  for (auto& x : m.data_) x = field_.mul(a, x);
  return m;
}

Vec Matrix::apply(std::span<const Scalar> v) const {
  if (v.size() != cols_) throw InputError("matrix-vector shape mismatch");
  Vec out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc += static_cast<std::uint64_t>((*this)(i, j)) * v[j];
    out[i] = static_cast<Scalar>(acc % field_.p());
  }
  return out;
}

Matrix Matrix::transposed() const {
  Matrix m(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Matrix Matrix::power(std::uint64_t e) const {
  if (rows_ != cols_) throw InputError("power of a non-square matrix");
  Matrix result = identity(field_, rows_);
  for (std::uint64_t k = 0; k < e; ++k) result = result * *this;
  return result;
}

bool Matrix::is_zero() const noexcept { return field_.is_zero(data_); }

void Matrix::append_rows(const Matrix& o) {
  if (o.cols_ != cols_) throw InputError("append_rows column mismatch");
  data_.insert(data_.end(), o.data_.begin(), o.data_.end());
  rows_ += o.rows_;
}

void Matrix::append_row(std::span<const Scalar> r) {
  if (r.size() != cols_) throw InputError("append_row column mismatch");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

// --- Elimination --------------------------------------------------------------

RrefResult rref(const Matrix& input) {
  Matrix m = input;
  const PrimeField& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    Scalar inv = f.inv(m(row, col));
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = f.mul(inv, m(row, j));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      Scalar factor = m(r, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        m(r, j) = f.sub(m(r, j), f.mul(factor, m(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  std::size_t rank = pivots.size();
  return {std::move(m), std::move(pivots), rank};
}

SubspaceBasis::SubspaceBasis(PrimeField field, std::size_t ambient_dim)
    : field_(field), ambient_(ambient_dim) {}

SubspaceBasis SubspaceBasis::span(PrimeField field, std::size_t ambient_dim,
                                  const std::vector<Vec>& vectors) {
  SubspaceBasis s(field, ambient_dim);
  if (vectors.empty() || ambient_dim == 0) return s;
  RrefResult r = rref(Matrix::from_rows(field, ambient_dim, vectors));
  for (std::size_t i = 0; i < r.rank; ++i) {
    auto row = r.reduced.row(i);
    s.vectors_.emplace_back(row.begin(), row.end());
  }
  s.pivots_ = r.pivots;
  return s;
}

SubspaceBasis SubspaceBasis::full(PrimeField field, std::size_t ambient_dim) {
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    Vec e(ambient_dim, 0);
    e[i] = 1;
    rows.push_back(std::move(e));
  }
  return span(field, ambient_dim, rows);
}

std::optional<Vec> SubspaceBasis::coordinates(std::span<const Scalar> v) const {
  if (v.size() != ambient_) throw InputError("subspace membership: dimension mismatch");
  // Rows are in RREF: the coefficient of row i is the entry of v at pivot i.
  Vec coeffs(vectors_.size());
  Vec residual(v.begin(), v.end());
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    coeffs[i] = residual[pivots_[i]];
    field_.axpy(residual, field_.neg(coeffs[i]), vectors_[i]);
  }
  if (!field_.is_zero(residual)) return std::nullopt;
  return coeffs;
}

bool SubspaceBasis::contains(std::span<const Scalar> v) const { return coordinates(v).has_value(); }

bool SubspaceBasis::contains(const SubspaceBasis& other) const {
  if (other.ambient_ != ambient_) throw InputError("subspace inclusion: dimension mismatch");
  return std::all_of(other.vectors_.begin(), other.vectors_.end(),
                     [&](const Vec& v) { return contains(v); });
}

Vec SubspaceBasis::combine(std::span<const Scalar> coeffs) const {
  if (coeffs.size() != vectors_.size()) throw InputError("combine: coefficient count mismatch");
  Vec out(ambient_, 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) field_.axpy(out, coeffs[i], vectors_[i]);
  return out;
}

SubspaceBasis kernel_basis(const Matrix& m) {
  const PrimeField& f = m.field();
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivots) is_pivot[c] = true;
  std::vector<Vec> vecs;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = f.neg(r.reduced(i, free));
    vecs.push_back(std::move(v));
  }
  return SubspaceBasis::span(f, m.cols(), vecs);
}

SubspaceBasis image_basis(const Matrix& m) {
  std::vector<Vec> cols;
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
  return SubspaceBasis::span(m.field(), m.rows(), cols);
}

SubspaceBasis intersect(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw InputError("intersect: dimension mismatch");
  const PrimeField& f = a.field();
  std::size_t n = a.ambient_dim();
  if (a.dim() == 0 || b.dim() == 0) return SubspaceBasis(f, n);
  // Solve sum_i s_i a_i - sum_j t_j b_j = 0 and map (s, t) to sum_i s_i a_i.
  std::vector<Vec> cols;
  for (const auto& v : a.vectors()) cols.push_back(v);
  for (const auto& v : b.vectors()) cols.push_back(f.negated(v));
  SubspaceBasis ker = kernel_basis(Matrix::from_columns(f, n, cols));
  std::vector<Vec> out;
  for (const auto& k : ker.vectors()) out.push_back(a.combine(std::span<const Scalar>(k).first(a.dim())));
  return SubspaceBasis::span(f, n, out);
}

SubspaceBasis sum(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw InputError("sum: dimension mismatch");
  std::vector<Vec> all = a.vectors();
  all.insert(all.end(), b.vectors().begin(), b.vectors().end());
  return SubspaceBasis::span(a.field(), a.ambient_dim(), all);
}

std::size_t quotient_dim(const SubspaceBasis& big, const SubspaceBasis& small) {
  if (!big.contains(small)) throw DomainError("quotient_dim: subspace inclusion violated");
  return big.dim() - small.dim();
}

SubspaceBasis map_subspace(const Matrix& m, const SubspaceBasis& s) {
  std::vector<Vec> imgs;
  for (const auto& v : s.vectors()) imgs.push_back(m.apply(v));
  return SubspaceBasis::span(m.field(), m.rows(), imgs);
}

std::optional<Vec> solve(const Matrix& m, std::span<const Scalar> b) {
  if (b.size() != m.rows()) throw InputError("solve: right-hand side length mismatch");
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  RrefResult r = rref(aug);
  if (r.rank > 0 && r.pivots.back() == m.cols()) return std::nullopt;
  Vec x(m.cols(), 0);
  for (std::size_t i = 0; i < r.rank; ++i) x[r.pivots[i]] = r.reduced(i, m.cols());
  return x;
}

std::string to_string(std::span<const Scalar> v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

}  // namespace rlr
