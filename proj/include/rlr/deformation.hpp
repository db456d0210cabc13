#pragma once

// Truncated formal deformations (mu_t, omega_t, rho_t) of a restricted
// Lie-Rinehart algebra: series arithmetic, the deformation equations,
// obstructions to extending one order further, and transport along formal
// automorphisms.

#include <optional>
#include <string>
#include <vector>

#include "rlr/cohomology.hpp"

namespace rlr {

/// c_0 + c_1 t + ... + c_N t^N with coefficients in a coordinate space.
struct TruncatedSeries {
  std::vector<Vec> coeffs;

  std::size_t order() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  static TruncatedSeries constant(const Vec& c, std::size_t order);
  static TruncatedSeries zero(std::size_t dim, std::size_t order);
};

/// Cauchy product in A[[t]] / t^{N+1}.
TruncatedSeries series_mul(const AlgebraPresentation& A, const TruncatedSeries& a, const TruncatedSeries& b);

/// A derivation of A extended t-linearly to A[[t]].
class SeriesDerivation {
 public:
  explicit SeriesDerivation(Derivation d) : d_(std::move(d)) {}
  TruncatedSeries operator()(const TruncatedSeries& s) const;

 private:
  Derivation d_;
};

SeriesDerivation extend_derivation(const Derivation& d);

/// Coefficients mu_k, omega_k, rho_k for k = 0..N. omega_k is a table over
/// every element of L (index_of_element order); rho_k[j] = rho_k(e_j).
struct TruncatedDeformation {
  std::vector<CEChain> mu;
  std::vector<std::vector<Vec>> omega;
  std::vector<std::vector<Matrix>> rho;

  std::size_t order() const noexcept { return mu.size() - 1; }
};

TruncatedDeformation undeformed(const LRContext& ctx, std::size_t order);
/// Appends coefficient k = order + 1.
void append_coefficient(const LRContext& ctx, TruncatedDeformation& d, const PCochain2& c);
/// Coefficient k as (mu_k, omega_k, theta_k) with theta_k in Der(A) coordinates.
PCochain2 coefficient(const LRContext& ctx, const TruncatedDeformation& d, std::size_t k);
/// Degree-2 LR cochain of coefficient k (characteristic 2).
LRCochain lr_coefficient(const LRContext& ctx, const TruncatedDeformation& d, std::size_t k);
/// Order-1 deformation with infinitesimal c (characteristic 2 chart).
TruncatedDeformation order_one(const LRContext& ctx, const LRCochain& c);
TruncatedDeformation order_one(const LRContext& ctx, const PCochain2& c);

/// Throws DomainError when some coefficient k >= 1 is not in C^2_LR.
void validate_coefficients(const LRContext& ctx, const TruncatedDeformation& d);

struct DeformationCheckOptions {
  bool validate = true;
};

/// One check per (condition, t-degree), named "<condition> [t^k]".
Report check_deformation(const LRContext& ctx, const TruncatedDeformation& d,
                         const DeformationCheckOptions& opt = {});
/// Residuals of every condition instance at t^k, concatenated in a fixed order.
Vec deformation_residual(const LRContext& ctx, const TruncatedDeformation& d, std::size_t k);

// ---------------------------------------------------------------------------
// Obstructions.

enum class ObstructionVariant {
  /// Every term of the t^{n+1} coefficient, including the square rho_m(x)^2
  /// at n+1 = 2m (characteristic 2).
  Complete,
  /// The displayed formulas taken literally.
  AsPrinted,
};

struct Obstructions {
  CEChain obs1;                        // degree 3, L-valued
  std::vector<std::vector<Vec>> obs2;  // obs2[x][j] = obs2(x, e_j), x over all of L
  CEChain mobs1;                       // degree 2, Der(A) coordinates
  std::vector<Vec> mobs2;              // per element of L, Der(A) coordinates
  bool obs2_evaluated = true;
};

/// Obstructions to extending an order-n deformation to order n+1. For p >= 3
/// only n = 1 is defined.
Obstructions obstructions(const LRContext& ctx, const TruncatedDeformation& d,
                          ObstructionVariant variant = ObstructionVariant::Complete);

/// Compares the obstructions of d (order n) with the differential of the
/// next coefficient of `extended` (order n+1), one check per identity.
Report obstruction_identities(const LRContext& ctx, const TruncatedDeformation& extended,
                              ObstructionVariant variant = ObstructionVariant::Complete);

/// A next coefficient making d a deformation of order n+1, or nullopt.
std::optional<TruncatedDeformation> extend(const LRContext& ctx, const TruncatedDeformation& d);

/// p >= 3: residual of the order-2 collection of the fifth equation over A x L.
Report order_two_hochschild(const LRContext& ctx, const TruncatedDeformation& d);

// ---------------------------------------------------------------------------
// Equivalence.

/// phi_t = id + t phi_1 + ... with A-linear coefficients.
struct FormalAutomorphism {
  std::vector<Matrix> phi;

  std::size_t order() const noexcept { return phi.size() - 1; }
  FormalAutomorphism inverse() const;
};

/// Throws DomainError when some phi_k is not A-linear or phi_0 != id.
void validate_automorphism(const LRContext& ctx, const FormalAutomorphism& phi);

/// mu~ = phi o mu o (phi^-1 x phi^-1), omega~ = phi o omega o phi^-1,
/// rho~ = rho o phi^-1. Characteristic 2.
TruncatedDeformation transport(const LRContext& ctx, const TruncatedDeformation& d, const FormalAutomorphism& phi);

/// True iff (mu_1, omega_1, rho_1) lies in B^2_LR. Characteristic 2.
bool is_trivial_infinitesimal(const LRContext& ctx, const TruncatedDeformation& d);

}  // namespace rlr
