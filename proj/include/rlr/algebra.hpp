#pragma once

// Structure-constant presentations of commutative algebras, restricted Lie
// algebras and restricted Lie-Rinehart algebras, with exhaustive axiom checks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rlr/gfp.hpp"
#include "rlr/report.hpp"

namespace rlr {

/// Limits for checks quantified over every element of a space.
struct EnumerationBudget {
  std::uint64_t evaluations = 1ULL << 16;
};

/// Commutative associative algebra: e_i e_j = sum_k c[i][j][k] e_k.
class AlgebraPresentation {
 public:
  AlgebraPresentation(std::string name, PrimeField field, std::size_t dim,
                      std::vector<std::string> labels = {});

  const std::string& name() const noexcept { return name_; }
  const PrimeField& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  Scalar coef(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }
  void set_coef(std::size_t i, std::size_t j, std::size_t k, Scalar v);
  /// Sets e_i e_j and e_j e_i together.
  void set_product(std::size_t i, std::size_t j, const Vec& value);

  Vec multiply(std::span<const Scalar> a, std::span<const Scalar> b) const;
  Vec power(std::span<const Scalar> a, std::uint64_t e) const;
  /// Matrix of b -> a b.
  Matrix left_multiplication(std::span<const Scalar> a) const;

 private:
  std::string name_;
  PrimeField field_;
  std::size_t dim_;
  std::vector<std::string> labels_;
  Vec c_;
};

/// Lie algebra by structure constants with p-map values on the basis. The
/// p-map of an arbitrary element is obtained from the basis values through
/// semilinearity and the s_i addition law.
class LiePresentation {
 public:
  LiePresentation(PrimeField field, std::size_t dim, std::vector<std::string> labels = {});

  const PrimeField& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  Scalar coef(std::size_t i, std::size_t j, std::size_t k) const { return b_[(i * dim_ + j) * dim_ + k]; }
  void set_coef(std::size_t i, std::size_t j, std::size_t k, Scalar v);
  /// Sets [e_i, e_j] = value and [e_j, e_i] = -value.
  void set_bracket(std::size_t i, std::size_t j, const Vec& value);
  const std::vector<Vec>& pmap_on_basis() const noexcept { return pmap_; }
  void set_pmap(std::size_t i, const Vec& value);

  Vec bracket(std::span<const Scalar> u, std::span<const Scalar> v) const;
  Matrix ad(std::span<const Scalar> u) const;
  /// x^[p], expanding x over the basis in index order.
  Vec pmap(std::span<const Scalar> x) const;
  /// x^[p], expanding x over the basis in the given index order.
  Vec pmap_in_order(std::span<const Scalar> x, const std::vector<std::size_t>& order) const;

 private:
  PrimeField field_;
  std::size_t dim_;
  std::vector<std::string> labels_;
  Vec b_;
  std::vector<Vec> pmap_;
};

/// Action of A on an A-module V: e_a . v_j = sum_k m[a][j][k] v_k.
class ModuleAction {
 public:
  ModuleAction(PrimeField field, std::size_t dim_a, std::size_t dim_v);

  std::size_t dim_a() const noexcept { return dim_a_; }
  std::size_t dim_v() const noexcept { return dim_v_; }
  Scalar coef(std::size_t a, std::size_t j, std::size_t k) const { return m_[(a * dim_v_ + j) * dim_v_ + k]; }
  void set_coef(std::size_t a, std::size_t j, std::size_t k, Scalar v);
  void set_action(std::size_t a, std::size_t j, const Vec& value);

  /// Matrix of v -> a . v.
  Matrix matrix(std::span<const Scalar> a) const;
  Vec act(std::span<const Scalar> a, std::span<const Scalar> v) const;

 private:
  PrimeField field_;
  std::size_t dim_a_, dim_v_;
  Vec m_;
};

/// Linear endomorphism of A; column b holds the coordinates of D(e_b).
using Derivation = Matrix;

/// A restricted Lie-Rinehart algebra (A, L, rho) with A acting on L.
struct RLRAlgebra {
  std::string name;
  AlgebraPresentation A;
  LiePresentation L;
  ModuleAction action;
  std::vector<Derivation> anchor;  // rho(e_i) for each L-basis vector

  const PrimeField& field() const noexcept { return A.field(); }
  std::uint32_t p() const noexcept { return A.field().p(); }

  /// rho(x) for an arbitrary element of L.
  Derivation rho(std::span<const Scalar> x) const;
  /// a . x
  Vec act(std::span<const Scalar> a, std::span<const Scalar> x) const { return action.act(a, x); }
  /// (a D)(b) := a D(b)
  Derivation scale(std::span<const Scalar> a, const Derivation& d) const;
};

// ---------------------------------------------------------------------------
// Checks. Failures are reported, never thrown.

Report check_commutative_associative(const AlgebraPresentation& A);
Report check_restricted_lie(const LiePresentation& L, const EnumerationBudget& budget = {});
Report check_rlr(const RLRAlgebra& R, const EnumerationBudget& budget = {});

/// Lie module structure on V given by one matrix per L-basis vector.
struct LieModule {
  std::size_t dim = 0;
  std::vector<Matrix> action;
};
Report check_restricted_module(const LiePresentation& L, const LieModule& M,
                               const EnumerationBudget& budget = {});
Report check_restricted_derivation(const LiePresentation& L, const Matrix& d,
                                   const EnumerationBudget& budget = {});

/// Representation of (A, L, rho) on an A-module M via pi: L -> End(M).
struct LRRepresentation {
  std::size_t dim = 0;
  std::vector<Matrix> a_action;  // e_a acting on M
  std::vector<Matrix> pi;        // pi(e_i)
};
Report check_lr_representation(const RLRAlgebra& R, const LRRepresentation& M,
                               const EnumerationBudget& budget = {});

// ---------------------------------------------------------------------------
// Jacobson machinery.

/// s_1(x,y), ..., s_{p-1}(x,y) from the lambda-expansion of (ad_{lambda x + y})^{p-1}(x).
std::vector<Vec> compute_jacobson_si(const LiePresentation& L, std::span<const Scalar> x,
                                     std::span<const Scalar> y);

/// Returns L with the unique p-map sending e_j to images[j]. Throws
/// DomainError naming the first j with (ad e_j)^p != ad images[j].
LiePresentation extend_pmap(const LiePresentation& L, const std::vector<Vec>& images);

// ---------------------------------------------------------------------------
// Derivations.

/// Der(A) as a subspace of End(A), coordinates row-major (entry (k, b) at k*dim+b).
SubspaceBasis compute_derivations(const AlgebraPresentation& A);
Vec flatten(const Matrix& m);
Matrix unflatten(const PrimeField& f, std::size_t n, std::span<const Scalar> v);
bool is_derivation(const AlgebraPresentation& A, const Matrix& d);
Derivation pth_power_derivation(const Derivation& d);

/// Der(A) presented as a restricted Lie algebra (commutator, D -> D^p) on the
/// canonical derivation basis, with coordinate conversions.
class DerivationAlgebra {
 public:
  explicit DerivationAlgebra(const AlgebraPresentation& A);

  std::size_t dim() const noexcept { return mats_.size(); }
  const LiePresentation& lie() const noexcept { return lie_; }
  const std::vector<Matrix>& basis() const noexcept { return mats_; }
  const SubspaceBasis& space() const noexcept { return space_; }

  Matrix to_matrix(std::span<const Scalar> coords) const;
  /// Coordinates of a derivation; throws DomainError if d is not one.
  Vec coordinates(const Matrix& d) const;

 private:
  PrimeField field_;
  std::size_t dim_a_;
  SubspaceBasis space_;
  std::vector<Matrix> mats_;
  LiePresentation lie_;
};

// ---------------------------------------------------------------------------
// Built-in examples.

struct Example {
  std::string name;
  std::string description;
  std::optional<AlgebraPresentation> A;
  std::optional<LiePresentation> L;
  std::optional<RLRAlgebra> R;
};

std::vector<std::string> example_names();
/// Lab1_A4 takes (lambda1, lambda2); other examples ignore them.
Example make_example(const std::string& name, Scalar lambda1 = 1, Scalar lambda2 = 0);

AlgebraPresentation two_dim_algebra(int index);  // A1..A5 over GF(2)
LiePresentation witt_algebra(std::uint32_t p);
RLRAlgebra rigid_example();
RLRAlgebra abelian_example(Scalar lambda1, Scalar lambda2, bool zero_pmap);
RLRAlgebra derivation_example(const AlgebraPresentation& A);

}  // namespace rlr
