#include "doctest.h"
#include "rlr/deformation.hpp"
#include "rlr/errors.hpp"
#include "support.hpp"

using namespace rlr;
using rlr::testing::Rng;

namespace {

LRContext context(const std::string& name) { return make_lr_context(*make_example(name).R); }

TruncatedSeries random_series(Rng& rng, std::size_t dim, std::uint32_t p, std::size_t order) {
  TruncatedSeries s;
  for (std::size_t k = 0; k <= order; ++k) s.coeffs.push_back(rng.vec(dim, p));
  return s;
}

}  // namespace

TEST_CASE("series product is the truncated Cauchy product") {
  AlgebraPresentation A = two_dim_algebra(4);
  Rng rng(1);
  TruncatedSeries a = random_series(rng, 2, 2, 3), b = random_series(rng, 2, 2, 3);
  TruncatedSeries ab = series_mul(A, a, b);
  REQUIRE(ab.order() == 3);
  for (std::size_t k = 0; k <= 3; ++k) {
    Vec expect(2, 0);
    for (std::size_t i = 0; i <= k; ++i) expect = A.field().added(expect, A.multiply(a.coeffs[i], b.coeffs[k - i]));
    CHECK(ab.coeffs[k] == expect);
  }
  CHECK_THROWS_AS(series_mul(A, a, random_series(rng, 2, 2, 2)), InputError);
}

TEST_CASE("extended derivations satisfy Leibniz on series") {
  Rng rng(2);
  for (int i : {1, 2, 4}) {
    AlgebraPresentation A = two_dim_algebra(i);
    SubspaceBasis der = compute_derivations(A);
    for (int trial = 0; trial < 10; ++trial) {
      SeriesDerivation D = extend_derivation(unflatten(A.field(), 2, rng.in(der)));
      TruncatedSeries a = random_series(rng, 2, 2, 2), b = random_series(rng, 2, 2, 2);
      TruncatedSeries lhs = D(series_mul(A, a, b));
      TruncatedSeries r1 = series_mul(A, D(a), b), r2 = series_mul(A, a, D(b));
      for (std::size_t k = 0; k <= 2; ++k) CHECK(lhs.coeffs[k] == A.field().added(r1.coeffs[k], r2.coeffs[k]));
    }
  }
}

TEST_CASE("undeformed bracket is a deformation of every order") {
  for (const auto& name : {"rigid_A4", "Lab0_A4", "DerA4", "P3_nab", "P3_ab1"}) {
    CAPTURE(name);
    LRContext ctx = context(name);
    CHECK(check_deformation(ctx, undeformed(ctx, 3)).passed());
  }
}

TEST_CASE("order-one deformations are exactly the cocycles") {
  Rng rng(3);
  for (const auto& name : rlr::testing::char2_rlr_examples()) {
    CAPTURE(name);
    LRContext ctx = context(name);
    CohomologyResult r = compute_Z2_B2_H2(ctx);
    for (int trial = 0; trial < 20; ++trial) {
      Vec v = trial % 2 ? rng.in(r.z) : rng.in(r.c2);
      TruncatedDeformation d = order_one(ctx, lr_cochain_from_coordinates(ctx, 2, v));
      CHECK(check_deformation(ctx, d).passed() == r.z.contains(v));
    }
  }
}

TEST_CASE("(mu1, omega4, theta1) on Lab0_A4 is not a trivial infinitesimal") {
  LRContext ctx = context("Lab0_A4");
  auto refs = reference_cocycles(ctx, "Lab0_A4");
  REQUIRE(refs.front().label == "(mu1,omega4,theta1)");
  TruncatedDeformation d = order_one(ctx, refs.front().cochain);
  CHECK(check_deformation(ctx, d).passed());
  CHECK_FALSE(is_trivial_infinitesimal(ctx, d));
}

TEST_CASE("coefficients outside C2_LR are rejected") {
  LRContext ctx = context("Lab0_A4");
  LRCochain c = zero_lr_cochain(ctx, 2);
  c.first.omega[0].set_value(0, Vec{1, 0});
  c.third.phi.set_basis({0}, Vec{1, 0});  // theta without its mu partner
  TruncatedDeformation d = order_one(ctx, c);
  CHECK_THROWS_AS(validate_coefficients(ctx, d), DomainError);
}

TEST_CASE("extensions satisfy the obstruction identities") {
  Rng rng(4);
  for (const auto& name : {"rigid_A4", "Lab0_A4", "DerA4"}) {
    CAPTURE(name);
    LRContext ctx = context(name);
    CohomologyResult r = compute_Z2_B2_H2(ctx);
    int extended = 0;
    for (int trial = 0; trial < 10; ++trial) {
      auto next = extend(ctx, order_one(ctx, lr_cochain_from_coordinates(ctx, 2, rng.in(r.z))));
      if (!next) continue;
      ++extended;
      CHECK(next->order() == 2);
      CHECK(check_deformation(ctx, *next).passed());
      CHECK(obstruction_identities(ctx, *next).passed());
    }
    CHECK(extended > 0);
  }
}

TEST_CASE("p = 3 order-two extensions") {
  Rng rng(5);
  for (const auto& name : {"P3_ab0", "P3_ab1", "P3_nab"}) {
    CAPTURE(name);
    LRContext ctx = context(name);
    int valid = 0;
    for (int trial = 0; trial < 2000 && valid < 5; ++trial) {
      PCochain2 c = rlr::testing::random_homogeneous_cochain(ctx, rng);
      TruncatedDeformation d = order_one(ctx, c);
      try {
        if (!check_deformation(ctx, d).passed()) continue;
      } catch (const DomainError&) {
        continue;
      }
      ++valid;
      CHECK(verify_p_cocycle(ctx, c).passed());
      if (auto next = extend(ctx, d)) {
        CHECK(obstruction_identities(ctx, *next).passed());
        CHECK(order_two_hochschild(ctx, *next).passed());
      }
    }
    CHECK(valid > 0);
  }
}

TEST_CASE("formal automorphisms: inverse and transport") {
  Rng rng(6);
  for (const auto& name : {"rigid_A4", "Lab0_A4", "DerA2"}) {
    CAPTURE(name);
    LRContext ctx = context(name);
    for (int trial = 0; trial < 5; ++trial) {
      FormalAutomorphism phi = rlr::testing::random_automorphism(ctx, rng, 3);
      validate_automorphism(ctx, phi);
      FormalAutomorphism inv = phi.inverse();
      for (std::size_t k = 0; k <= 3; ++k) {
        Matrix sum(ctx.R.field(), ctx.dim_l(), ctx.dim_l());
        for (std::size_t i = 0; i <= k; ++i) sum = sum + phi.phi[i] * inv.phi[k - i];
        CHECK(sum == (k == 0 ? Matrix::identity(ctx.R.field(), ctx.dim_l()) : Matrix(ctx.R.field(), ctx.dim_l(), ctx.dim_l())));
      }
      TruncatedDeformation moved = transport(ctx, undeformed(ctx, 3), phi);
      CHECK(check_deformation(ctx, moved).passed());
      CHECK(is_trivial_infinitesimal(ctx, moved));
      TruncatedDeformation back = transport(ctx, moved, inv);
      TruncatedDeformation base = undeformed(ctx, 3);
      CHECK(back.mu == base.mu);
      CHECK(back.omega == base.omega);
      CHECK(back.rho == base.rho);
    }
  }
}

TEST_CASE("automorphism that is not A-linear is rejected") {
  LRContext ctx = context("Lab0_A4");
  FormalAutomorphism phi{{Matrix::identity(ctx.R.field(), 2), Matrix::from_rows(ctx.R.field(), 2, {{0, 1}, {0, 0}})}};
  bool linear = true;
  for (std::size_t a = 0; a < 2; ++a) {
    Matrix act = ctx.R.action.matrix(unit(2, a));
    linear = linear && (phi.phi[1] * act == act * phi.phi[1]);
  }
  if (!linear) CHECK_THROWS_AS(validate_automorphism(ctx, phi), DomainError);
}

TEST_CASE("transport is characteristic 2 only") {
  LRContext ctx = context("P3_nab");
  FormalAutomorphism phi{{Matrix::identity(ctx.R.field(), 2), Matrix(ctx.R.field(), 2, 2)}};
  CHECK_THROWS_AS(transport(ctx, undeformed(ctx, 1), phi), DomainError);
}
