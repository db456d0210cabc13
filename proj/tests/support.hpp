#pragma once

// Random generators shared by the unit tests and the acceptance runner.

#include <random>

#include "rlr/deformation.hpp"

namespace rlr::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  Vec vec(std::size_t n, std::uint32_t p) {
    Vec v(n);
    for (auto& s : v) s = static_cast<Scalar>(gen_() % p);
    return v;
  }
  /// Uniform element of the subspace.
  Vec in(const SubspaceBasis& s) { return s.combine(vec(s.dim(), s.field().p())); }
  std::uint64_t below(std::uint64_t n) { return gen_() % n; }

 private:
  std::mt19937_64 gen_;
};

/// Endomorphisms of L commuting with the action of every e_a, flattened row-major.
inline SubspaceBasis a_linear_endomorphisms(const LRContext& ctx) {
  const PrimeField& f = ctx.R.field();
  const std::size_t n = ctx.dim_l(), na = ctx.R.A.dim();
  Matrix m = matrix_of(f, n * n, na * n * n, [&](const Vec& u) {
    Matrix phi = unflatten(f, n, u);
    Vec out;
    for (std::size_t a = 0; a < na; ++a) {
      Matrix act = ctx.R.action.matrix(unit(na, a));
      Vec w = flatten(phi * act - act * phi);
      out.insert(out.end(), w.begin(), w.end());
    }
    return out;
  });
  return kernel_basis(m);
}

inline FormalAutomorphism random_automorphism(const LRContext& ctx, Rng& rng, std::size_t order) {
  const PrimeField& f = ctx.R.field();
  SubspaceBasis lin = a_linear_endomorphisms(ctx);
  FormalAutomorphism phi{{Matrix::identity(f, ctx.dim_l())}};
  for (std::size_t k = 1; k <= order; ++k) phi.phi.push_back(unflatten(f, ctx.dim_l(), rng.in(lin)));
  return phi;
}

/// Random (mu, omega, theta) with omega(lambda x) = lambda^p omega(x); mu,
/// omega and theta are each zeroed with some probability so that sparse
/// candidates occur often.
inline PCochain2 random_homogeneous_cochain(const LRContext& ctx, Rng& rng) {
  const PrimeField& f = ctx.R.field();
  const std::uint32_t p = f.p();
  const std::size_t n = ctx.dim_l();
  PCochain2 c = zero_p_cochain(ctx);
  if (rng.below(3)) c.mu.set_coordinates(rng.vec(c.mu.coordinate_count(), p));
  if (rng.below(2)) c.theta.set_coordinates(rng.vec(c.theta.coordinate_count(), p));
  const bool zero_omega = rng.below(5) == 0;
  for (std::uint64_t i = 1; i < c.omega.size(); ++i) {
    Vec x = element_from_index(p, n, i);
    std::size_t lead = 0;
    while (x[lead] == 0) ++lead;
    if (x[lead] == 1 && !zero_omega) c.omega[i] = rng.vec(n, p);
  }
  for (std::uint64_t i = 1; i < c.omega.size(); ++i) {
    Vec x = element_from_index(p, n, i);
    std::size_t lead = 0;
    while (x[lead] == 0) ++lead;
    const Scalar lambda = x[lead];
    if (lambda == 1) continue;
    Vec rep = f.scaled(f.inv(lambda), x);
    c.omega[i] = f.scaled(f.frobenius(lambda), c.omega[index_of_element(p, rep)]);
  }
  return c;
}

inline std::vector<std::string> char2_rlr_examples() {
  return {"rigid_A4", "Lab0_A4", "Lab1_A4", "DerA1", "DerA2", "DerA4"};
}

}  // namespace rlr::testing
