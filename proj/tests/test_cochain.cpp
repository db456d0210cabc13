#include "doctest.h"
#include "rlr/cohomology.hpp"
#include "support.hpp"

using namespace rlr;
using rlr::testing::Rng;

TEST_CASE("CE cochain evaluation is alternating and multilinear") {
  PrimeField f(3);
  Rng rng(1);
  CEChain c(f, 2, 3, 2);
  c.set_coordinates(rng.vec(c.coordinate_count(), 3));
  Vec x = rng.vec(3, 3), y = rng.vec(3, 3), z = rng.vec(3, 3);
  CHECK(c.eval({x, y}) == f.negated(c.eval({y, x})));
  CHECK(f.is_zero(c.eval({x, x})));
  CHECK(c.eval({f.added(x, z), y}) == f.added(c.eval({x, y}), c.eval({z, y})));
  CHECK(c.at_basis({2, 0}) == f.negated(c.at_basis({0, 2})));
}

TEST_CASE("d1 of the identity is the bracket") {
  // Over GF(2) the sign convention does not matter.
  LiePresentation L = rigid_example().L;
  ModuleContext ctx = adjoint_context(L);
  CEChain id(L.field(), 1, 2, 2);
  for (std::size_t i = 0; i < 2; ++i) id.set_basis({i}, unit(2, i));
  CEChain d = d_ce(ctx, id);
  CHECK(d.at_basis({0, 1}) == L.bracket(unit(2, 0), unit(2, 1)));
}

TEST_CASE("Chevalley-Eilenberg differential squares to zero") {
  Rng rng(2);
  for (const auto& name : {"W1(5)", "P3_nab"}) {
    Example ex = make_example(name);
    ModuleContext ctx = adjoint_context(*ex.L);
    const std::uint32_t p = ex.L->field().p();
    for (std::size_t n = 0; n <= 2; ++n) {
      CEChain c(ex.L->field(), n, ex.L->dim(), ex.L->dim());
      c.set_coordinates(rng.vec(c.coordinate_count(), p));
      CHECK(d_ce(ctx, d_ce(ctx, c)).is_zero());
    }
  }
}

TEST_CASE("restricted, morphism and LR differentials square to zero") {
  Rng rng(4);
  for (const auto& name : rlr::testing::char2_rlr_examples()) {
    CAPTURE(name);
    LRContext ctx = make_lr_context(*make_example(name).R);
    const std::size_t nl = ctx.dim_l();
    for (std::size_t n = 1; n <= 2; ++n) {
      ResCochain c(ctx.R.field(), n, nl, nl);
      c.set_coordinates(rng.vec(c.coordinate_count(), 2));
      CHECK(d_res(ctx.morph.LL, d_res(ctx.morph.LL, c)).is_zero());

      MorphismCochain m = zero_morphism_cochain(ctx.morph, n);
      m.set_coordinates(rng.vec(m.coordinate_count(), 2));
      CHECK(fd_res(ctx.morph, fd_res(ctx.morph, m)).is_zero());

      LRCochain lr = lr_cochain_from_coordinates(ctx, n, rng.in(lr_cochain_space(ctx, n)));
      LRCochain once = lr_differential(ctx, lr);
      CHECK(lr_differential(ctx, once).coordinates() == Vec(lr_coordinate_count(ctx, n + 2), 0));
    }
  }
}

TEST_CASE("LR cochains embed into the morphism complex and project back") {
  Rng rng(6);
  for (const auto& name : rlr::testing::char2_rlr_examples()) {
    CAPTURE(name);
    LRContext ctx = make_lr_context(*make_example(name).R);
    for (std::size_t n = 1; n <= 3; ++n) {
      LRCochain c = lr_cochain_from_coordinates(ctx, n, rng.in(lr_cochain_space(ctx, n)));
      CHECK_FALSE(lr_first_violation(ctx, c).has_value());
      CHECK(lr_project(ctx, lr_embed(ctx, c)) == c);
    }
  }
}

TEST_CASE("a cochain violating A-linearity names the constraint") {
  LRContext ctx = make_lr_context(*make_example("Lab0_A4").R);
  SubspaceBasis c2 = lr_cochain_space(ctx, 2);
  for (std::uint64_t i = 0; i < (1u << lr_coordinate_count(ctx, 2)); ++i) {
    Vec v = element_from_index(2, lr_coordinate_count(ctx, 2), i);
    if (c2.contains(v)) continue;
    auto bad = lr_first_violation(ctx, lr_cochain_from_coordinates(ctx, 2, v));
    REQUIRE(bad.has_value());
    CHECK_FALSE(bad->constraint.empty());
    break;
  }
}
