#include "doctest.h"
#include "rlr/cohomology.hpp"
#include "rlr/errors.hpp"
#include "support.hpp"

using namespace rlr;
using rlr::testing::Rng;

namespace {

Matrix E(std::size_t r, std::size_t c) {
  Matrix m(PrimeField(2), 2, 2);
  m(r, c) = 1;
  return m;
}

LRContext context(const std::string& name, Scalar l1 = 1, Scalar l2 = 0) {
  return make_lr_context(*make_example(name, l1, l2).R);
}

}  // namespace

TEST_CASE("Lab0_A4 cohomology") {
  LRContext ctx = context("Lab0_A4");
  auto named = reference_cocycles(ctx, "Lab0_A4");
  CohomologyResult r = compute_Z2_B2_H2(ctx, named);
  CHECK(compute_Z2_res(ctx.R.L).dim() == 6);
  CHECK(r.z.dim() == 4);
  CHECK(r.b.dim() == 0);
  CHECK(r.h_dim == 4);
  REQUIRE(r.named_cocycle_matches.size() == 4);
  for (const auto& [label, ok] : r.named_cocycle_matches) {
    CAPTURE(label);
    CHECK(ok);
  }
  std::vector<Vec> refs;
  for (const auto& n : named) refs.push_back(n.cochain.coordinates());
  CHECK(SubspaceBasis::span(ctx.R.field(), r.z.ambient_dim(), refs) == r.z);
}

TEST_CASE("theta solver reproduces theta1 and theta2") {
  LRContext ctx = context("Lab0_A4");
  const PrimeField& f = ctx.R.field();
  // (mu1, omega4): mu(x,y) = x, omega(y) = y.
  auto s1 = solve_theta(ctx, mu_omega(f, {1, 0}, {0, 0}, {0, 1}));
  REQUIRE(s1.has_value());
  CHECK(s1->homogeneous.dim() == 0);
  CHECK(s1->particular == theta_from_matrices(ctx, {E(0, 1), E(1, 1)}).phi.coordinates());
  // (mu2, 0): mu(x,y) = y.
  auto s2 = solve_theta(ctx, mu_omega(f, {0, 1}, {0, 0}, {0, 0}));
  REQUIRE(s2.has_value());
  CHECK(s2->particular == theta_from_matrices(ctx, {E(1, 1), Matrix(f, 2, 2)}).phi.coordinates());
  // (0, omega3): omega(y) = x admits no theta.
  CHECK_FALSE(solve_theta(ctx, mu_omega(f, {0, 0}, {0, 0}, {1, 0})).has_value());
}

TEST_CASE("rigid example: every cocycle is a coboundary") {
  LRContext ctx = context("rigid_A4");
  CohomologyResult r = compute_Z2_B2_H2(ctx);
  CHECK(r.z == r.b);
  CHECK(r.h_dim == 0);
  CHECK(compute_Z2_res(ctx.R.L) == compute_B2_res(ctx.R.L));
}

TEST_CASE("Lab1_A4 cohomology does not depend on lambda") {
  std::optional<std::size_t> zres, zlr;
  for (auto [l1, l2] : {std::pair<Scalar, Scalar>{1, 0}, {1, 1}, {0, 1}}) {
    LRContext ctx = context("Lab1_A4", l1, l2);
    CohomologyResult r = compute_Z2_B2_H2(ctx);
    if (!zres) {
      zres = compute_Z2_res(ctx.R.L).dim();
      zlr = r.z.dim();
    }
    CHECK(compute_Z2_res(ctx.R.L).dim() == *zres);
    CHECK(r.z.dim() == *zlr);
    // the p-map is nonzero, so d1 has a nonzero omega part and hits every cocycle
    CHECK(r.b == r.z);
  }
}

TEST_CASE("cohomology report fields") {
  LRContext ctx = context("rigid_A4");
  Report rep = cohomology_report(ctx);
  std::string json = emit(rep, ReportFormat::Json);
  CHECK(json.find("\"Z2_LR_dim\": 2") != std::string::npos);
  CHECK(json == emit(cohomology_report(ctx), ReportFormat::Json));
}

TEST_CASE("pointwise verifier agrees with the solver over the whole Lab0 chart") {
  LRContext ctx = context("Lab0_A4");
  CohomologyResult r = compute_Z2_B2_H2(ctx);
  const std::size_t n = lr_coordinate_count(ctx, 2);
  std::size_t members = 0;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
    Vec v = element_from_index(2, n, i);
    bool verified = verify_p_cocycle(ctx, p_cochain_from_lr(ctx, lr_cochain_from_coordinates(ctx, 2, v))).passed();
    members += verified;
    CHECK(verified == r.z.contains(v));
  }
  CHECK(members == (std::size_t{1} << r.z.dim()));
}

TEST_CASE("p = 3: images of the degree-1 differential are trivial cocycles") {
  Rng rng(9);
  for (const auto& name : {"P3_ab0", "P3_ab1", "P3_nab"}) {
    CAPTURE(name);
    LRContext ctx = context(name);
    for (bool semilinear : {true, false}) {
      PVerifierOptions opt{semilinear};
      int tried = 0;
      for (int k = 0; k < 200 && tried < 20; ++k) {
        PCochain1 c{CEChain(ctx.R.field(), 1, ctx.dim_l(), ctx.dim_l()), rng.vec(ctx.dim_g(), 3)};
        c.gamma.set_coordinates(rng.vec(c.gamma.coordinate_count(), 3));
        if (p_c1_violation(ctx, c, opt)) continue;
        ++tried;
        PCochain2 image = p_differential1(ctx, c);
        CHECK(verify_p_cocycle(ctx, image).passed());
        CHECK(verify_trivial_p_cocycle(ctx, image, c, opt));
      }
      CHECK(tried > 0);
    }
  }
}

TEST_CASE("p = 3 verifier rejects a broken cocycle with a witness") {
  LRContext ctx = context("P3_nab");
  // theta(y) != 0 breaks alpha(theta) = 0 at (x, y) since [x, y] = y and rho = 0.
  PCochain2 c = zero_p_cochain(ctx);
  REQUIRE(ctx.dim_g() > 0);
  c.theta.set_basis({1}, unit(ctx.dim_g(), 0));
  Report rep = verify_p_cocycle(ctx, c);
  CHECK_FALSE(rep.passed());
  for (const auto& ch : rep.checks)
    if (!ch.passed) CHECK_FALSE(ch.witness.empty());
}

TEST_CASE("invalid primitive is reported as a domain error") {
  LRContext ctx = context("P3_ab1");
  Rng rng(12);
  for (int k = 0; k < 100; ++k) {
    PCochain1 c{CEChain(ctx.R.field(), 1, ctx.dim_l(), ctx.dim_l()), rng.vec(ctx.dim_g(), 3)};
    c.gamma.set_coordinates(rng.vec(c.gamma.coordinate_count(), 3));
    if (!p_c1_violation(ctx, c, {})) continue;
    CHECK_THROWS_AS(verify_trivial_p_cocycle(ctx, zero_p_cochain(ctx), c), DomainError);
    break;
  }
}
