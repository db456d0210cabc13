#pragma once

// Cochain constraints and differentials as linear systems over GF(p):
// Z^2/B^2/H^2 of the Lie-Rinehart deformation complex in characteristic 2,
// and the pointwise verifier for deformation 2-cocycles when p >= 3.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rlr/cochain.hpp"
#include "rlr/report.hpp"

namespace rlr {

/// Matrix whose j-th column is f(e_j), for a linear f: GF(p)^in -> GF(p)^out.
Matrix matrix_of(const PrimeField& field, std::size_t in_dim, std::size_t out_dim,
                 const std::function<Vec(const Vec&)>& f);

/// Rows are constraint residuals; its kernel is C^n_LR in chart coordinates.
Matrix constraint_system(const LRContext& ctx, std::size_t degree);
SubspaceBasis lr_cochain_space(const LRContext& ctx, std::size_t degree);
/// Matrix of lr_differential from degree n to degree n+1 on the whole chart.
Matrix lr_differential_matrix(const LRContext& ctx, std::size_t degree);

struct NamedCocycle {
  std::string label;
  LRCochain cochain;
};

struct CohomologyResult {
  SubspaceBasis c1, c2, z, b;
  std::size_t h_dim = 0;
  std::vector<std::pair<std::string, bool>> named_cocycle_matches;
};

CohomologyResult compute_Z2_B2_H2(const LRContext& ctx, const std::vector<NamedCocycle>& named = {});
/// Kernel of d^2_res on the (mu, omega) chart of C^2_res(L; L).
SubspaceBasis compute_Z2_res(const LiePresentation& L);
/// B^2_res(L; L), the image of d^1_res.
SubspaceBasis compute_B2_res(const LiePresentation& L);

/// Every theta making (first, theta) a member of C^2_LR, as a particular
/// solution plus the homogeneous solution space; nullopt when none exists.
struct ThetaSolution {
  Vec particular;  // coordinates of theta
  SubspaceBasis homogeneous;
};
std::optional<ThetaSolution> solve_theta(const LRContext& ctx, const ResCochain& first);

/// Known 2-cocycles of the built-in examples Lab0_A4 and Lab1_A4, labelled
/// (mu1,omega4,theta1) and so on. Empty for any other example name.
std::vector<NamedCocycle> reference_cocycles(const LRContext& ctx, const std::string& example);
ResCochain mu_omega(const PrimeField& f, const Vec& mu_xy, const Vec& omega_x, const Vec& omega_y);
/// theta as a 1-cochain L -> Der(A) from one matrix per L-basis vector.
ResCochain theta_from_matrices(const LRContext& ctx, const std::vector<Matrix>& images);

Report cohomology_report(const LRContext& ctx, const std::vector<NamedCocycle>& named = {});

// ---------------------------------------------------------------------------
// p >= 3 verifier.

/// Degree-2 object for p >= 3: mu alternating, omega as a full table indexed
/// by element index (base-p digits, least significant first), theta a
/// 1-cochain with values in Der(A) coordinates.
struct PCochain2 {
  CEChain mu;
  std::vector<Vec> omega;
  CEChain theta;

  Vec omega_at(std::uint32_t p, std::span<const Scalar> x) const;
};

PCochain2 zero_p_cochain(const LRContext& ctx);

struct PVerifierOptions {
  /// Reading of the degree-1 LR condition: gamma(ax) = a^p gamma(x) + d(a)x
  /// as printed, or the a-linear gamma(ax) = a gamma(x) + d(a)x.
  bool semilinear_c1 = true;
};

/// Pointwise checks of the degree-2 cocycle conditions. For p = 2 it also
/// checks polarization of omega by mu and delta^2 omega = 0, so that it agrees
/// with the linear solver.
Report verify_p_cocycle(const LRContext& ctx, const PCochain2& c);
PCochain2 p_cochain_from_lr(const LRContext& ctx, const LRCochain& c);

/// A degree-1 LR cochain for p >= 3: gamma: L -> L and d in Der(A) coordinates.
struct PCochain1 {
  CEChain gamma;
  Vec d;
};

/// Residuals of the degree-1 LR condition on all of A x L.
std::optional<std::string> p_c1_violation(const LRContext& ctx, const PCochain1& c, const PVerifierOptions& opt);
/// Image of (gamma, d) under the degree-1 differential:
/// (d_ce gamma, ind1 gamma, rho o gamma - [rho(.), d]) with
/// ind1(gamma)(x) = ad_x^(p-1) gamma(x) - gamma(x^[p]).
PCochain2 p_differential1(const LRContext& ctx, const PCochain1& c);
/// True iff c equals the image of the candidate. Throws DomainError when the
/// candidate is not a degree-1 LR cochain.
bool verify_trivial_p_cocycle(const LRContext& ctx, const PCochain2& c, const PCochain1& candidate,
                              const PVerifierOptions& opt = {});

}  // namespace rlr
