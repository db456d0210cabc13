#include "doctest.h"
#include "rlr/enumerate.hpp"
#include "rlr/errors.hpp"
#include "rlr/gfp.hpp"
#include "support.hpp"

using namespace rlr;
using rlr::testing::Rng;

namespace {

Matrix random_matrix(Rng& rng, const PrimeField& f, std::size_t r, std::size_t c) {
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < r; ++i) rows.push_back(rng.vec(c, f.p()));
  return Matrix::from_rows(f, c, rows);
}

}  // namespace

TEST_CASE("field arithmetic") {
  PrimeField f(7);
  CHECK(f.reduce(-1) == 6);
  CHECK(f.mul(3, f.inv(3)) == 1);
  CHECK(f.pow(3, 6) == 1);
  CHECK_THROWS_AS(f.inv(0), DomainError);
  for (Scalar a = 0; a < 7; ++a) CHECK(f.frobenius(a) == a);
}

TEST_CASE("residues of different moduli do not mix") {
  FieldElement a(1, 2), b(1, 3);
  CHECK_THROWS_AS(a + b, DomainError);
  CHECK((FieldElement(1, 2) + FieldElement(1, 2)).value() == 0);
  CHECK(FieldElement(5, 7).inv().value() == 3);
}

TEST_CASE("composite modulus is rejected") {
  CHECK_THROWS_AS(PrimeField(4), DomainError);
  CHECK_THROWS_AS(PrimeField(1), DomainError);
}

TEST_CASE("rank-nullity and kernel membership") {
  Rng rng(11);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    PrimeField f(p);
    for (int trial = 0; trial < 30; ++trial) {
      Matrix m = random_matrix(rng, f, 1 + rng.below(5), 1 + rng.below(6));
      SubspaceBasis k = kernel_basis(m);
      CHECK(k.dim() + rref(m).rank == m.cols());
      for (const auto& v : k.vectors()) CHECK(f.is_zero(m.apply(v)));
      CHECK(image_basis(m).dim() == rref(m).rank);
    }
  }
}

TEST_CASE("kernel equals the brute-force null set over GF(2)") {
  Rng rng(3);
  PrimeField f(2);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix m = random_matrix(rng, f, 3, 5);
    SubspaceBasis k = kernel_basis(m);
    std::size_t zeros = 0;
    for (std::uint64_t i = 0; i < 32; ++i) {
      Vec v = element_from_index(2, 5, i);
      bool null = f.is_zero(m.apply(v));
      zeros += null;
      CHECK(null == k.contains(v));
    }
    CHECK(zeros == (std::size_t{1} << k.dim()));
  }
}

TEST_CASE("subspace basis is canonical") {
  Rng rng(5);
  PrimeField f(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(rng.vec(4, 3));
    SubspaceBasis a = SubspaceBasis::span(f, 4, gens);
    std::vector<Vec> mixed;
    for (int i = 0; i < 4; ++i) mixed.push_back(rng.in(a));
    mixed.insert(mixed.end(), gens.begin(), gens.end());
    CHECK(SubspaceBasis::span(f, 4, mixed) == a);
  }
}

TEST_CASE("dim(U + W) + dim(U n W) = dim U + dim W") {
  Rng rng(17);
  for (std::uint32_t p : {2u, 3u}) {
    PrimeField f(p);
    for (int trial = 0; trial < 30; ++trial) {
      auto random_space = [&] {
        std::vector<Vec> g;
        for (std::uint64_t i = 0; i < 1 + rng.below(4); ++i) g.push_back(rng.vec(5, p));
        return SubspaceBasis::span(f, 5, g);
      };
      SubspaceBasis u = random_space(), w = random_space();
      SubspaceBasis i = intersect(u, w);
      CHECK(sum(u, w).dim() + i.dim() == u.dim() + w.dim());
      CHECK(u.contains(i));
      CHECK(w.contains(i));
    }
  }
}

TEST_CASE("solve and quotient") {
  Rng rng(23);
  PrimeField f(5);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix m = random_matrix(rng, f, 3, 4);
    Vec x = rng.vec(4, 5);
    auto y = solve(m, m.apply(x));
    REQUIRE(y.has_value());
    CHECK(m.apply(*y) == m.apply(x));
  }
  SubspaceBasis line = SubspaceBasis::span(f, 2, {{1, 0}});
  SubspaceBasis other = SubspaceBasis::span(f, 2, {{0, 1}});
  CHECK(quotient_dim(SubspaceBasis::full(f, 2), line) == 1);
  CHECK_THROWS_AS(quotient_dim(line, other), DomainError);
  CHECK_FALSE(solve(Matrix::from_rows(f, 1, {{0}}), Vec{1}).has_value());
}

TEST_CASE("element indexing round trip") {
  for (std::uint64_t i = 0; i < 81; ++i) CHECK(index_of_element(3, element_from_index(3, 4, i)) == i);
  CHECK_THROWS_AS(checked_power(7, 7, 1000, "test"), BudgetExceeded);
}
