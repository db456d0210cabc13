#pragma once

// Cochains of restricted Lie algebras and the differentials of the
// characteristic-2 restricted complex, the morphism complex of a restricted
// morphism, and the Lie-Rinehart sub-complex.
//
// A Chevalley-Eilenberg n-cochain is stored on increasing basis tuples. A
// restricted n-cochain (n >= 2) adds omega, stored on a basis vector in the
// first slot and increasing basis tuples in the remaining n-2 slots; at any
// other first argument omega is evaluated by polarization against phi.

#include <memory>
#include <string>
#include <vector>

#include "rlr/algebra.hpp"
#include "rlr/enumerate.hpp"

namespace rlr {

/// Alternating multilinear map from (GF(p)^src)^n to GF(p)^tgt.
class CEChain {
 public:
  CEChain(PrimeField field, std::size_t degree, std::size_t src_dim, std::size_t tgt_dim);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t degree() const noexcept { return degree_; }
  std::size_t src_dim() const noexcept { return src_; }
  std::size_t tgt_dim() const noexcept { return tgt_; }
  /// Number of increasing basis tuples.
  std::size_t tuple_count() const noexcept { return tuples_->size(); }
  const std::vector<std::size_t>& tuple(std::size_t t) const { return (*tuples_)[t]; }
  std::size_t coordinate_count() const noexcept { return values_.size(); }

  std::span<const Scalar> value(std::size_t t) const { return {values_.data() + t * tgt_, tgt_}; }
  void set_value(std::size_t t, std::span<const Scalar> v);
  /// Value on basis vectors in any order; sign-corrected, zero on repeats.
  Vec at_basis(std::vector<std::size_t> idx) const;
  void set_basis(const std::vector<std::size_t>& increasing, std::span<const Scalar> v);
  /// Value on arbitrary arguments by multilinear expansion.
  Vec eval(const std::vector<Vec>& args) const;

  const Vec& coordinates() const noexcept { return values_; }
  void set_coordinates(std::span<const Scalar> coords);
  bool is_zero() const noexcept { return field_.is_zero(values_); }
  void add(const CEChain& o);

  friend bool operator==(const CEChain& a, const CEChain& b) {
    return a.degree_ == b.degree_ && a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.values_ == b.values_;
  }

 private:
  PrimeField field_;
  std::size_t degree_, src_, tgt_;
  std::shared_ptr<const Combinations> tuples_;
  Vec values_;
};

/// Restricted n-cochain (phi, omega). For n < 2 omega is empty.
class ResCochain {
 public:
  ResCochain(PrimeField field, std::size_t degree, std::size_t src_dim, std::size_t tgt_dim);

  const PrimeField& field() const noexcept { return phi.field(); }
  std::size_t degree() const noexcept { return phi.degree(); }
  std::size_t src_dim() const noexcept { return phi.src_dim(); }
  std::size_t tgt_dim() const noexcept { return phi.tgt_dim(); }
  bool has_omega() const noexcept { return degree() >= 2; }

  /// omega(x, Z) with |Z| = degree - 2, polarized in x.
  Vec eval_omega(const Vec& x, const std::vector<Vec>& Z) const;
  /// omega(e_i, e_J) for basis indices J in any order.
  Vec omega_at_basis(std::size_t i, const std::vector<std::size_t>& J) const;

  std::size_t coordinate_count() const noexcept;
  Vec coordinates() const;
  void set_coordinates(std::span<const Scalar> coords);
  bool is_zero() const noexcept;
  void add(const ResCochain& o);

  friend bool operator==(const ResCochain& a, const ResCochain& b) {
    return a.phi == b.phi && a.omega == b.omega;
  }

  CEChain phi;
  /// omega[i] is the (degree-2)-cochain Z -> omega(e_i, Z).
  std::vector<CEChain> omega;
};

std::size_t res_coordinate_count(std::size_t degree, std::size_t src_dim, std::size_t tgt_dim);

/// A restricted Lie algebra acting on a vector space.
struct ModuleContext {
  LiePresentation L;
  std::size_t dim = 0;
  std::vector<Matrix> action;  // e_i acting on the module

  Matrix act(std::span<const Scalar> x) const;
};

ModuleContext adjoint_context(const LiePresentation& L);
/// L acting on M through a Lie morphism phi: x . m = [phi(x), m]_M.
ModuleContext pullback_context(const LiePresentation& L, const LiePresentation& M, const Matrix& phi);

CEChain d_ce(const ModuleContext& ctx, const CEChain& c);
/// omega-part of d_res: delta^1 for degree-1 input, delta^n for n >= 2.
/// Characteristic 2 only.
std::vector<CEChain> delta_restricted(const ModuleContext& ctx, const ResCochain& c);
/// d_res(phi, omega) = (d_ce phi, delta omega); d^0_res = d^0_CE.
ResCochain d_res(const ModuleContext& ctx, const ResCochain& c);

/// Applies T to every value.
ResCochain push_forward(const Matrix& T, const ResCochain& c);
/// Precomposes with S (columns are images of the new basis), polarizing omega.
ResCochain pull_back(const ResCochain& c, const Matrix& S);

// ---------------------------------------------------------------------------
// Morphism complex of a restricted morphism phi: L -> M (characteristic 2).

struct MorphismContext {
  ModuleContext LL;  // L acting on itself
  ModuleContext MM;  // M acting on itself
  ModuleContext LM;  // L acting on M through phi
  Matrix phi;        // dim M x dim L
};

MorphismContext make_morphism_context(const LiePresentation& L, const LiePresentation& M, const Matrix& phi);

/// Degree-n element (first, second, third); third has degree n-1.
struct MorphismCochain {
  ResCochain first;
  ResCochain second;
  ResCochain third;

  std::size_t degree() const noexcept { return first.degree(); }
  Vec coordinates() const;
  void set_coordinates(std::span<const Scalar> coords);
  std::size_t coordinate_count() const noexcept;
  bool is_zero() const noexcept { return first.is_zero() && second.is_zero() && third.is_zero(); }

  friend bool operator==(const MorphismCochain&, const MorphismCochain&) = default;
};

MorphismCochain zero_morphism_cochain(const MorphismContext& ctx, std::size_t degree);

/// Third component of the differential: (alpha, beta) as one restricted cochain,
///   alpha = phi o mu + nu o phi^n + d_ce theta,
///   beta  = phi o omega + epsilon o phi^(n-1) + delta gamma.
/// In degree 2 beta carries the subscripts (omega, epsilon).
ResCochain alpha_beta(const MorphismContext& ctx, const ResCochain& first, const ResCochain& second,
                      const ResCochain& third);

MorphismCochain fd_res(const MorphismContext& ctx, const MorphismCochain& m);

// ---------------------------------------------------------------------------
// Lie-Rinehart sub-complex (characteristic 2).

struct LRContext {
  RLRAlgebra R;
  DerivationAlgebra G;
  MorphismContext morph;
  EnumerationBudget budget;

  std::size_t dim_l() const noexcept { return R.L.dim(); }
  std::size_t dim_g() const noexcept { return G.dim(); }
  /// rho(x) in Der(A) coordinates.
  Vec rho_coords(std::span<const Scalar> x) const { return morph.phi.apply(x); }
};

LRContext make_lr_context(const RLRAlgebra& R, EnumerationBudget budget = {});

/// degree 1: first = mu (L -> L), third = d (degree 0, a vector of Der(A)).
/// degree 2: first = (mu, omega), third = theta.
/// degree n >= 3: first = (mu, omega), third = (theta, gamma).
struct LRCochain {
  ResCochain first;
  ResCochain third;

  std::size_t degree() const noexcept { return first.degree(); }
  Vec coordinates() const;
  void set_coordinates(std::span<const Scalar> coords);
  std::size_t coordinate_count() const noexcept;

  friend bool operator==(const LRCochain&, const LRCochain&) = default;
};

LRCochain zero_lr_cochain(const LRContext& ctx, std::size_t degree);
LRCochain lr_cochain_from_coordinates(const LRContext& ctx, std::size_t degree, std::span<const Scalar> coords);
std::size_t lr_coordinate_count(const LRContext& ctx, std::size_t degree);

/// One instance of an LR constraint with its residual (zero when satisfied).
struct ConstraintInstance {
  std::string constraint;
  std::string instance;
  Vec residual;
};

/// Every LR constraint of the given degree, instantiated on basis tuples where
/// it is multilinear and over all of A x L where it is quadratic. Throws
/// BudgetExceeded when the exhaustive part does not fit the budget.
std::vector<ConstraintInstance> lr_constraint_instances(const LRContext& ctx, const LRCochain& c);
/// First violated constraint, or nullopt.
std::optional<ConstraintInstance> lr_first_violation(const LRContext& ctx, const LRCochain& c);

MorphismCochain lr_embed(const LRContext& ctx, const LRCochain& c);
/// Left inverse of lr_embed. Throws DomainError naming the failed condition.
LRCochain lr_project(const LRContext& ctx, const MorphismCochain& m);
/// iota^{-1} o fd_res o iota. Validates input and output; an invalid output
/// raises Error since it would mean the complex is mis-implemented.
LRCochain lr_differential(const LRContext& ctx, const LRCochain& c, bool validate = true);

}  // namespace rlr
