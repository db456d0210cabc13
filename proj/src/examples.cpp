#include "rlr/algebra.hpp"
#include "rlr/enumerate.hpp"

namespace rlr {

namespace {

const PrimeField kGF2(2);

Vec v2(Scalar a, Scalar b) { return {a, b}; }

/// A4's action on a 2-dimensional L with basis (x, y): e1 acts as the
/// identity, e2 sends x to y and kills y.
ModuleAction a4_action(const PrimeField& f) {
  ModuleAction m(f, 2, 2);
  m.set_action(0, 0, v2(1, 0));
  m.set_action(0, 1, v2(0, 1));
  m.set_action(1, 0, v2(0, 1));
  return m;
}

/// e1 e1 = e1, e1 e2 = e2, e2 e2 = 0.
AlgebraPresentation a4_shape(const std::string& name, const PrimeField& f) {
  AlgebraPresentation A(name, f, 2);
  A.set_product(0, 0, v2(1, 0));
  A.set_product(0, 1, v2(0, 1));
  return A;
}

std::vector<Derivation> zero_anchor(const PrimeField& f, std::size_t na, std::size_t nl) {
  return std::vector<Derivation>(nl, Matrix(f, na, na));
}

RLRAlgebra p3_abelian(bool identity_pmap) {
  PrimeField f(3);
  LiePresentation L(f, 2, {"x", "y"});
  if (identity_pmap) L.set_pmap(0, v2(1, 0));
  return RLRAlgebra{identity_pmap ? "P3_ab1" : "P3_ab0", a4_shape("A4(GF3)", f), L, a4_action(f),
                    zero_anchor(f, 2, 2)};
}

RLRAlgebra p3_nonabelian() {
  PrimeField f(3);
  LiePresentation L(f, 2, {"x", "y"});
  L.set_bracket(0, 1, v2(0, 1));
  L.set_pmap(0, v2(1, 0));
  return RLRAlgebra{"P3_nab", AlgebraPresentation("zero(GF3)", f, 2), L, ModuleAction(f, 2, 2),
                    zero_anchor(f, 2, 2)};
}

struct Entry {
  const char* name;
  const char* description;
};

const Entry kEntries[] = {
    {"A1", "e1e1=e1 over GF(2)"},
    {"A2", "e1e1=e2 over GF(2)"},
    {"A3", "e1e1=e1, e2e2=e2 over GF(2)"},
    {"A4", "e1e1=e1, e1e2=e2 over GF(2)"},
    {"A5", "e1e1=e1, e1e2=e2, e2e2=e1+e2 over GF(2)"},
    {"W1(5)", "Witt algebra W(1) over GF(5)"},
    {"W1(7)", "Witt algebra W(1) over GF(7)"},
    {"rigid_A4", "(A4, L) with [x,y]=y, x^[2]=x, y^[2]=0, rho(x)=e2 (x) e2*"},
    {"Lab0_A4", "(A4, abelian L, zero p-map, zero anchor)"},
    {"Lab1_A4", "(A4, abelian L, x^[2]=l1 x + l2 y, y^[2]=0, zero anchor)"},
    {"DerA1", "(A1, Der(A1), id)"},
    {"DerA2", "(A2, Der(A2), id)"},
    {"DerA4", "(A4, Der(A4), id)"},
    {"P3_ab0", "A4-shaped algebra over GF(3), abelian L, zero p-map, zero anchor"},
    {"P3_ab1", "A4-shaped algebra over GF(3), abelian L, x^[3]=x, zero anchor"},
    {"P3_nab", "zero algebra over GF(3), [x,y]=y, x^[3]=x, zero anchor"},
};

}  // namespace

AlgebraPresentation two_dim_algebra(int index) {
  AlgebraPresentation A("A" + std::to_string(index), kGF2, 2);
  switch (index) {
    case 1:
      A.set_product(0, 0, v2(1, 0));
      break;
    case 2:
      A.set_product(0, 0, v2(0, 1));
      break;
    case 3:
      A.set_product(0, 0, v2(1, 0));
      A.set_product(1, 1, v2(0, 1));
      break;
    case 4:
      return a4_shape("A4", kGF2);
    case 5:
      A = a4_shape("A5", kGF2);
      A.set_product(1, 1, v2(1, 1));
      break;
    default:
      throw InputError("no two-dimensional algebra A" + std::to_string(index));
  }
  return A;
}

LiePresentation witt_algebra(std::uint32_t p) {
  PrimeField f(p);
  // Basis e_{-1}, ..., e_{p-2}; e_i sits at position i+1.
  std::vector<std::string> labels;
  for (int i = -1; i <= static_cast<int>(p) - 2; ++i) labels.push_back("e" + std::to_string(i));
  LiePresentation L(f, p, labels);
  const int lo = -1, hi = static_cast<int>(p) - 2;
  for (int i = lo; i <= hi; ++i)
    for (int j = i + 1; j <= hi; ++j) {
      if (i + j < lo || i + j > hi) continue;
      Vec v(p, 0);
      v[static_cast<std::size_t>(i + j + 1)] = f.reduce(j - i);
      L.set_bracket(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(j + 1), v);
    }
  L.set_pmap(1, unit(p, 1));
  return L;
}

RLRAlgebra rigid_example() {
  LiePresentation L(kGF2, 2, {"x", "y"});
  L.set_bracket(0, 1, v2(0, 1));
  L.set_pmap(0, v2(1, 0));
  std::vector<Derivation> anchor = zero_anchor(kGF2, 2, 2);
  anchor[0](1, 1) = 1;
  return RLRAlgebra{"rigid_A4", two_dim_algebra(4), L, a4_action(kGF2), anchor};
}

RLRAlgebra abelian_example(Scalar lambda1, Scalar lambda2, bool zero_pmap) {
  LiePresentation L(kGF2, 2, {"x", "y"});
  if (!zero_pmap) L.set_pmap(0, v2(lambda1, lambda2));
  return RLRAlgebra{zero_pmap ? "Lab0_A4" : "Lab1_A4", two_dim_algebra(4), L, a4_action(kGF2),
                    zero_anchor(kGF2, 2, 2)};
}

RLRAlgebra derivation_example(const AlgebraPresentation& A) {
  DerivationAlgebra G(A);
  const PrimeField& f = A.field();
  ModuleAction action(f, A.dim(), G.dim());
  for (std::size_t a = 0; a < A.dim(); ++a) {
    Matrix left = A.left_multiplication(unit(A.dim(), a));
    for (std::size_t j = 0; j < G.dim(); ++j) action.set_action(a, j, G.coordinates(left * G.basis()[j]));
  }
  return RLRAlgebra{"Der" + A.name(), A, G.lie(), action, G.basis()};
}

std::vector<std::string> example_names() {
  std::vector<std::string> names;
  for (const auto& e : kEntries) names.emplace_back(e.name);
  return names;
}

Example make_example(const std::string& name, Scalar lambda1, Scalar lambda2) {
  const Entry* entry = nullptr;
  for (const auto& e : kEntries)
    if (name == e.name) entry = &e;
  if (!entry) throw InputError("unknown example '" + name + "'");
  Example ex{name, entry->description, std::nullopt, std::nullopt, std::nullopt};
  if (name.size() == 2 && name[0] == 'A') {
    ex.A = two_dim_algebra(name[1] - '0');
  } else if (name == "W1(5)") {
    ex.L = witt_algebra(5);
  } else if (name == "W1(7)") {
    ex.L = witt_algebra(7);
  } else if (name == "rigid_A4") {
    ex.R = rigid_example();
  } else if (name == "Lab0_A4") {
    ex.R = abelian_example(0, 0, true);
  } else if (name == "Lab1_A4") {
    ex.R = abelian_example(kGF2.reduce(lambda1), kGF2.reduce(lambda2), false);
  } else if (name.rfind("DerA", 0) == 0) {
    ex.R = derivation_example(two_dim_algebra(name[4] - '0'));
  } else if (name == "P3_ab0" || name == "P3_ab1") {
    ex.R = p3_abelian(name == "P3_ab1");
  } else if (name == "P3_nab") {
    ex.R = p3_nonabelian();
  }
  if (ex.R) {
    ex.A = ex.R->A;
    ex.L = ex.R->L;
  }
  return ex;
}

}  // namespace rlr
