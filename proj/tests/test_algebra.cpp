#include "doctest.h"
#include "rlr/algebra.hpp"
#include "rlr/enumerate.hpp"

using namespace rlr;

namespace {

Matrix E(std::size_t r, std::size_t c) {
  Matrix m(PrimeField(2), 2, 2);
  m(r, c) = 1;
  return m;
}

}  // namespace

TEST_CASE("two-dimensional algebras are commutative and associative") {
  for (int i = 1; i <= 5; ++i) CHECK(check_commutative_associative(two_dim_algebra(i)).passed());
  CHECK(check_commutative_associative(AlgebraPresentation("zero", PrimeField(2), 3)).passed());
}

TEST_CASE("non-commutative tensor is rejected at the offending pair") {
  AlgebraPresentation A("bad", PrimeField(2), 2);
  A.set_coef(0, 1, 1, 1);
  Report r = check_commutative_associative(A);
  CHECK_FALSE(r.passed());
  CHECK(r.find("A commutative")->witness == "basis pair (0,1)");
}

TEST_CASE("derivation table of the two-dimensional algebras") {
  auto span_of = [](std::vector<Matrix> ms) {
    std::vector<Vec> vs;
    for (auto& m : ms) vs.push_back(flatten(m));
    return SubspaceBasis::span(PrimeField(2), 4, vs);
  };
  CHECK(compute_derivations(two_dim_algebra(1)) == span_of({E(1, 1)}));
  // The table lists only e2 (x) e1*; e1 (x) e1* is a derivation too in characteristic 2.
  CHECK(compute_derivations(two_dim_algebra(2)) == span_of({E(0, 0), E(1, 0)}));
  CHECK(compute_derivations(two_dim_algebra(3)).dim() == 0);
  CHECK(compute_derivations(two_dim_algebra(4)) == span_of({E(0, 1), E(1, 1)}));
  CHECK(compute_derivations(two_dim_algebra(5)).dim() == 0);
}

TEST_CASE("derivation solver agrees with brute force over all endomorphisms") {
  for (int i = 1; i <= 5; ++i) {
    AlgebraPresentation A = two_dim_algebra(i);
    SubspaceBasis der = compute_derivations(A);
    std::size_t members = 0;
    for (std::uint64_t k = 0; k < 16; ++k) {
      Matrix d = unflatten(A.field(), 2, element_from_index(2, 4, k));
      bool leibniz = is_derivation(A, d);
      members += leibniz;
      CHECK(leibniz == der.contains(flatten(d)));
    }
    CHECK(members == (std::size_t{1} << der.dim()));
  }
}

TEST_CASE("p-th power of a derivation") {
  Matrix d = E(1, 1);
  CHECK(pth_power_derivation(d) == d);
  CHECK(pth_power_derivation(Matrix(PrimeField(2), 2, 2)).is_zero());
  AlgebraPresentation A1 = two_dim_algebra(1);
  SubspaceBasis der = compute_derivations(A1);
  for (const Vec& v : der.vectors())
    CHECK(is_derivation(A1, pth_power_derivation(unflatten(PrimeField(2), 2, v))));
}

TEST_CASE("Der(A) is closed under commutator and p-th power") {
  for (int i = 1; i <= 5; ++i) {
    AlgebraPresentation A = two_dim_algebra(i);
    SubspaceBasis der = compute_derivations(A);
    for (const Vec& u : der.vectors()) {
      Matrix du = unflatten(A.field(), 2, u);
      CHECK(der.contains(flatten(pth_power_derivation(du))));
      for (const Vec& v : der.vectors()) {
        Matrix dv = unflatten(A.field(), 2, v);
        CHECK(der.contains(flatten(du * dv - dv * du)));
      }
    }
  }
}

TEST_CASE("Jacobson s_i") {
  SUBCASE("abelian") {
    LiePresentation L(PrimeField(5), 3);
    for (const Vec& s : compute_jacobson_si(L, Vec{1, 2, 3}, Vec{4, 0, 1})) CHECK(L.field().is_zero(s));
  }
  SUBCASE("p = 2 gives the bracket") {
    LiePresentation L = rigid_example().L;
    for (std::uint64_t i = 0; i < 4; ++i)
      for (std::uint64_t j = 0; j < 4; ++j) {
        Vec x = element_from_index(2, 2, i), y = element_from_index(2, 2, j);
        auto s = compute_jacobson_si(L, x, y);
        REQUIRE(s.size() == 1);
        CHECK(s[0] == L.bracket(x, y));
      }
  }
  SUBCASE("p = 3 with [x,y] = y") {
    LiePresentation L(PrimeField(3), 2);
    L.set_bracket(0, 1, Vec{0, 1});
    auto s = compute_jacobson_si(L, Vec{1, 0}, Vec{0, 1});
    REQUIRE(s.size() == 2);
    CHECK(s[0] == Vec{0, 0});
    CHECK(s[1] == Vec{0, 1});
  }
}

TEST_CASE("restricted Lie checks") {
  CHECK(check_restricted_lie(witt_algebra(5)).passed());
  CHECK(check_restricted_lie(LiePresentation(PrimeField(3), 3)).passed());
  LiePresentation L(PrimeField(2), 2);
  L.set_bracket(0, 1, Vec{0, 1});
  Report r = check_restricted_lie(L);
  CHECK_FALSE(r.passed());
  CHECK_FALSE(r.find("ad of p-map equals p-th power of ad on basis")->passed);
}

TEST_CASE("extend_pmap") {
  LiePresentation L(PrimeField(2), 2);
  L.set_bracket(0, 1, Vec{0, 1});
  LiePresentation R = extend_pmap(L, {Vec{1, 0}, Vec{0, 0}});
  CHECK(R.pmap(Vec{1, 1}) == Vec{1, 1});
  CHECK_THROWS_AS(extend_pmap(L, {Vec{0, 0}, Vec{0, 0}}), DomainError);

  LiePresentation W = witt_algebra(5);
  std::vector<Vec> images(5, Vec(5, 0));
  images[1] = unit(5, 1);
  LiePresentation bare = W;
  for (std::size_t i = 0; i < 5; ++i) bare.set_pmap(i, Vec(5, 0));
  LiePresentation W2 = extend_pmap(bare, images);
  CHECK(W2.pmap_on_basis() == W.pmap_on_basis());
  CHECK(check_restricted_lie(W2).passed());
}

TEST_CASE("p-map does not depend on the expansion order") {
  for (const char* name : {"rigid_A4", "P3_nab", "DerA4"}) {
    LiePresentation L = *make_example(name).L;
    std::vector<std::size_t> fwd, rev;
    for (std::size_t i = 0; i < L.dim(); ++i) fwd.push_back(i);
    rev.assign(fwd.rbegin(), fwd.rend());
    std::uint64_t count = saturating_power(L.field().p(), L.dim());
    for (std::uint64_t i = 0; i < count; ++i) {
      Vec x = element_from_index(L.field().p(), L.dim(), i);
      CHECK(L.pmap_in_order(x, fwd) == L.pmap_in_order(x, rev));
    }
  }
}

TEST_CASE("restricted Lie-Rinehart examples") {
  for (const std::string& name : example_names()) {
    Example ex = make_example(name);
    if (!ex.R) continue;
    INFO(name);
    Report r = check_rlr(*ex.R);
    INFO(emit(r, ReportFormat::Text));
    CHECK(r.passed());
  }
  for (auto [l1, l2] : {std::pair{1u, 0u}, {1u, 1u}, {0u, 1u}})
    CHECK(check_rlr(abelian_example(l1, l2, false)).passed());
}

TEST_CASE("rigid example with a non-A-linear anchor fails") {
  RLRAlgebra R = rigid_example();
  R.anchor[1] = E(1, 1);
  Report r = check_rlr(R);
  CHECK_FALSE(r.find("anchor is A-linear")->passed);
}

TEST_CASE("modules, derivations and representations") {
  LiePresentation W = witt_algebra(5);
  LieModule adj{5, {}};
  for (std::size_t i = 0; i < 5; ++i) adj.action.push_back(W.ad(unit(5, i)));
  CHECK(check_restricted_module(W, adj).passed());
  for (std::size_t i = 0; i < 5; ++i) CHECK(check_restricted_derivation(W, W.ad(unit(5, i))).passed());

  RLRAlgebra R = rigid_example();
  LRRepresentation M{2, {}, R.anchor};
  for (std::size_t a = 0; a < 2; ++a) M.a_action.push_back(R.A.left_multiplication(unit(2, a)));
  CHECK(check_lr_representation(R, M).passed());
}
