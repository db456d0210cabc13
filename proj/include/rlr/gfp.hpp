#pragma once

// Exact arithmetic over a prime field GF(p) and dense linear algebra on top
// of it. Scalars are plain residues in [0, p); the field object carries the
// modulus and performs every operation.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rlr/errors.hpp"

namespace rlr {

using Scalar = std::uint32_t;
using Vec = std::vector<Scalar>;

inline constexpr std::uint32_t kDefaultMaxModulus = 97;

bool is_prime(std::uint32_t n);

class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p, std::uint32_t max_modulus = kDefaultMaxModulus);

  std::uint32_t p() const noexcept { return p_; }

  Scalar reduce(long long v) const noexcept {
    long long r = v % static_cast<long long>(p_);
    return static_cast<Scalar>(r < 0 ? r + p_ : r);
  }
  Scalar add(Scalar a, Scalar b) const noexcept {
    Scalar s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Scalar sub(Scalar a, Scalar b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Scalar neg(Scalar a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const noexcept {
    return static_cast<Scalar>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Scalar pow(Scalar a, std::uint64_t e) const noexcept;
  Scalar inv(Scalar a) const;
  /// a -> a^p. The identity on a prime field, computed rather than assumed.
  Scalar frobenius(Scalar a) const noexcept { return pow(a, p_); }

  // Vector helpers. All vectors passed together must have equal length.
  Vec zeros(std::size_t n) const { return Vec(n, 0); }
  void axpy(Vec& y, Scalar a, std::span<const Scalar> x) const;  // y += a*x
  Vec added(std::span<const Scalar> x, std::span<const Scalar> y) const;
  Vec scaled(Scalar a, std::span<const Scalar> x) const;
  Vec negated(std::span<const Scalar> x) const;
  bool is_zero(std::span<const Scalar> x) const noexcept;

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

/// A single residue tagged with its modulus; mixing moduli is an error.
class FieldElement {
 public:
  FieldElement(long long value, std::uint32_t modulus);

  Scalar value() const noexcept { return value_; }
  std::uint32_t modulus() const noexcept { return modulus_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inv() const;
  FieldElement frobenius() const;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  void require_same(const FieldElement& o) const;
  Scalar value_;
  std::uint32_t modulus_;
};

/// Dense row-major matrix over GF(p).
class Matrix {
 public:
  Matrix(PrimeField field, std::size_t rows, std::size_t cols);
  static Matrix identity(PrimeField field, std::size_t n);
  /// Rows become matrix rows; every row must have length `cols`.
  static Matrix from_rows(PrimeField field, std::size_t cols, const std::vector<Vec>& rows);
  static Matrix from_columns(PrimeField field, std::size_t rows, const std::vector<Vec>& cols);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vec column(std::size_t c) const;

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(Scalar a) const;
  Vec apply(std::span<const Scalar> v) const;
  Matrix transposed() const;
  Matrix power(std::uint64_t e) const;
  bool is_zero() const noexcept;
  /// Appends the rows of `o` (same column count).
  void append_rows(const Matrix& o);
  void append_row(std::span<const Scalar> r);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  Vec data_;
};

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank;
};

/// Reduced row-echelon form. Leftmost pivot column first, topmost candidate
/// row chosen as pivot; the result is canonical for the row space.
RrefResult rref(const Matrix& m);

/// A subspace of GF(p)^n, stored as the nonzero rows of its RREF basis so that
/// equal subspaces have identical representations.
class SubspaceBasis {
 public:
  SubspaceBasis(PrimeField field, std::size_t ambient_dim);
  static SubspaceBasis span(PrimeField field, std::size_t ambient_dim, const std::vector<Vec>& vectors);
  static SubspaceBasis full(PrimeField field, std::size_t ambient_dim);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return vectors_.size(); }
  const std::vector<Vec>& vectors() const noexcept { return vectors_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(std::span<const Scalar> v) const;
  bool contains(const SubspaceBasis& other) const;
  /// Coordinates of v in the stored basis, or nullopt if v is not a member.
  std::optional<Vec> coordinates(std::span<const Scalar> v) const;
  /// Linear combination of the basis vectors.
  Vec combine(std::span<const Scalar> coeffs) const;

  friend bool operator==(const SubspaceBasis& a, const SubspaceBasis& b) {
    return a.field_ == b.field_ && a.ambient_ == b.ambient_ && a.vectors_ == b.vectors_;
  }

 private:
  PrimeField field_;
  std::size_t ambient_;
  std::vector<Vec> vectors_;
  std::vector<std::size_t> pivots_;
};

SubspaceBasis kernel_basis(const Matrix& m);
/// Column space of m, as a subspace of GF(p)^rows.
SubspaceBasis image_basis(const Matrix& m);
SubspaceBasis intersect(const SubspaceBasis& a, const SubspaceBasis& b);
SubspaceBasis sum(const SubspaceBasis& a, const SubspaceBasis& b);
/// dim big - dim small; throws DomainError unless small is contained in big.
std::size_t quotient_dim(const SubspaceBasis& big, const SubspaceBasis& small);
/// Image of a subspace under m (as a subspace of GF(p)^rows).
SubspaceBasis map_subspace(const Matrix& m, const SubspaceBasis& s);
/// Some x with m x = b, or nullopt when the system is inconsistent.
std::optional<Vec> solve(const Matrix& m, std::span<const Scalar> b);

std::string to_string(std::span<const Scalar> v);

}  // namespace rlr
