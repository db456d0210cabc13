#include <sstream>

#include "rlr/algebra.hpp"
#include "rlr/enumerate.hpp"

namespace rlr {

namespace {

std::string idx(std::initializer_list<std::size_t> ids) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (auto i : ids) {
    if (!first) os << ',';
    os << i;
    first = false;
  }
  os << ')';
  return os.str();
}

std::string pair_witness(const char* n1, const Vec& v1, const char* n2, const Vec& v2) {
  return std::string(n1) + "=" + to_string(v1) + " " + n2 + "=" + to_string(v2);
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

/// Records a single quantified check; stops at the first violation.
struct Tally {
  Check& check;
  void fail(std::string witness) {
    if (check.passed) {
      check.passed = false;
      check.witness = std::move(witness);
    }
  }
  bool done() const { return !check.passed; }
};

}  // namespace

Report check_commutative_associative(const AlgebraPresentation& A) {
  Report r;
  r.title = "commutative associative algebra " + A.name();
  const std::size_t n = A.dim();
  Tally comm{r.add("A commutative")};
  for (std::size_t i = 0; i < n && !comm.done(); ++i)
    for (std::size_t j = i + 1; j < n && !comm.done(); ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (A.coef(i, j, k) != A.coef(j, i, k)) {
          comm.fail("basis pair " + idx({i, j}));
          break;
        }
  Tally assoc{r.add("A associative")};
  for (std::size_t i = 0; i < n && !assoc.done(); ++i)
    for (std::size_t j = 0; j < n && !assoc.done(); ++j)
      for (std::size_t k = 0; k < n && !assoc.done(); ++k) {
        Vec ei = unit(n, i), ej = unit(n, j), ek = unit(n, k);
        if (A.multiply(A.multiply(ei, ej), ek) != A.multiply(ei, A.multiply(ej, ek)))
          assoc.fail("basis triple " + idx({i, j, k}));
      }
  return r;
}

Report check_restricted_lie(const LiePresentation& L, const EnumerationBudget& budget) {
  Report r;
  r.title = "restricted Lie algebra";
  const PrimeField& f = L.field();
  const std::size_t n = L.dim();
  const std::uint32_t p = f.p();

  Tally anti{r.add("L antisymmetric")};
  for (std::size_t i = 0; i < n && !anti.done(); ++i)
    for (std::size_t j = i; j < n && !anti.done(); ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (L.coef(i, j, k) != f.neg(L.coef(j, i, k)) || (i == j && L.coef(i, i, k) != 0)) {
          anti.fail("basis pair " + idx({i, j}));
          break;
        }

  Tally jac{r.add("L Jacobi identity")};
  for (std::size_t i = 0; i < n && !jac.done(); ++i)
    for (std::size_t j = i + 1; j < n && !jac.done(); ++j)
      for (std::size_t k = j + 1; k < n && !jac.done(); ++k) {
        Vec x = unit(n, i), y = unit(n, j), z = unit(n, k);
        Vec s = L.bracket(x, L.bracket(y, z));
        f.axpy(s, 1, L.bracket(y, L.bracket(z, x)));
        f.axpy(s, 1, L.bracket(z, L.bracket(x, y)));
        if (!f.is_zero(s)) jac.fail("basis triple " + idx({i, j, k}));
      }

  Tally adb{r.add("ad of p-map equals p-th power of ad on basis")};
  for (std::size_t i = 0; i < n && !adb.done(); ++i)
    if (!(L.ad(L.pmap_on_basis()[i]) == L.ad(unit(n, i)).power(p))) adb.fail("basis index " + idx({i}));

  // The recursive evaluation of the p-map must satisfy semilinearity, the ad
  // condition and the addition law on every element, not only on the basis.
  auto single = quantifier_sets(p, {n}, budget.evaluations);
  Check& adall_c = r.add("ad of p-map equals p-th power of ad on L");
  adall_c.partial = single[0].partial;
  Tally adall{adall_c};
  for (const Vec& x : single[0].elements) {
    if (adall.done()) break;
    if (!(L.ad(L.pmap(x)) == L.ad(x).power(p))) adall.fail("x=" + to_string(x));
  }

  Check& semi_c = r.add("p-map semilinear");
  semi_c.partial = single[0].partial;
  Tally semi{semi_c};
  for (const Vec& x : single[0].elements) {
    if (semi.done()) break;
    Vec xp = L.pmap(x);
    for (Scalar lam = 2; lam < p; ++lam)
      if (L.pmap(f.scaled(lam, x)) != f.scaled(f.frobenius(lam), xp)) {
        semi.fail("x=" + to_string(x) + " lambda=" + std::to_string(lam));
        break;
      }
  }

  auto pairs = quantifier_sets(p, {n, n}, budget.evaluations);
  Check& add_c = r.add("p-map addition law with s_i");
  add_c.partial = pairs[0].partial;
  Tally addl{add_c};
  for (const Vec& x : pairs[0].elements) {
    if (addl.done()) break;
    Vec xp = L.pmap(x);
    for (const Vec& y : pairs[1].elements) {
      Vec rhs = f.added(xp, L.pmap(y));
      for (const Vec& s : compute_jacobson_si(L, x, y)) f.axpy(rhs, 1, s);
      if (L.pmap(f.added(x, y)) != rhs) {
        addl.fail(pair_witness("x", x, "y", y));
        break;
      }
    }
  }
  return r;
}

Report check_rlr(const RLRAlgebra& R, const EnumerationBudget& budget) {
  Report r;
  r.title = "restricted Lie-Rinehart algebra " + R.name;
  r.merge(check_commutative_associative(R.A), "");
  r.merge(check_restricted_lie(R.L, budget), "");
  const PrimeField& f = R.field();
  const std::size_t na = R.A.dim(), nl = R.L.dim();
  const std::uint32_t p = f.p();

  Tally shape{r.add("anchor has one derivation per L-basis vector")};
  if (R.anchor.size() != nl) shape.fail("got " + std::to_string(R.anchor.size()));
  for (const auto& d : R.anchor)
    if (d.rows() != na || d.cols() != na) shape.fail("anchor matrix has wrong shape");
  if (shape.done()) return r;

  Tally massoc{r.add("A-module action associative")};
  for (std::size_t a = 0; a < na && !massoc.done(); ++a)
    for (std::size_t b = 0; b < na && !massoc.done(); ++b) {
      Vec ea = unit(na, a), eb = unit(na, b);
      if (!(R.action.matrix(R.A.multiply(ea, eb)) == R.action.matrix(ea) * R.action.matrix(eb)))
        massoc.fail("basis pair " + idx({a, b}));
    }

  Tally der{r.add("anchor takes values in Der(A)")};
  for (std::size_t i = 0; i < nl && !der.done(); ++i)
    if (!is_derivation(R.A, R.anchor[i])) der.fail("L-basis index " + idx({i}));

  Tally morph{r.add("anchor is a Lie morphism")};
  for (std::size_t i = 0; i < nl && !morph.done(); ++i)
    for (std::size_t j = i + 1; j < nl && !morph.done(); ++j) {
      Vec x = unit(nl, i), y = unit(nl, j);
      if (!(R.rho(R.L.bracket(x, y)) == commutator(R.rho(x), R.rho(y))))
        morph.fail("basis pair " + idx({i, j}));
    }

  Tally restr{r.add("anchor is restricted")};
  for (std::size_t i = 0; i < nl && !restr.done(); ++i)
    if (!(R.rho(R.L.pmap_on_basis()[i]) == R.anchor[i].power(p))) restr.fail("L-basis index " + idx({i}));

  Tally alin{r.add("anchor is A-linear")};
  for (std::size_t a = 0; a < na && !alin.done(); ++a)
    for (std::size_t i = 0; i < nl && !alin.done(); ++i) {
      Vec ea = unit(na, a), x = unit(nl, i);
      if (!(R.rho(R.act(ea, x)) == R.scale(ea, R.rho(x)))) alin.fail("basis pair (a,x)=" + idx({a, i}));
    }

  Tally leib{r.add("Leibniz rule [x,ay] = a[x,y] + rho(x)(a)y")};
  for (std::size_t i = 0; i < nl && !leib.done(); ++i)
    for (std::size_t a = 0; a < na && !leib.done(); ++a)
      for (std::size_t j = 0; j < nl && !leib.done(); ++j) {
        Vec x = unit(nl, i), ea = unit(na, a), y = unit(nl, j);
        Vec lhs = R.L.bracket(x, R.act(ea, y));
        Vec rhs = R.act(ea, R.L.bracket(x, y));
        f.axpy(rhs, 1, R.act(R.rho(x).apply(ea), y));
        if (lhs != rhs) leib.fail("basis triple (x,a,y)=" + idx({i, a, j}));
      }

  auto sets = quantifier_sets(p, {na, nl}, budget.evaluations);
  Check& hoch_c = r.add("Hochschild identity (ax)^[p] = a^p x^[p] + rho(ax)^(p-1)(a) x");
  hoch_c.partial = sets[0].partial;
  Tally hoch{hoch_c};
  for (const Vec& a : sets[0].elements) {
    if (hoch.done()) break;
    Vec ap = R.A.power(a, p);
    for (const Vec& x : sets[1].elements) {
      Vec ax = R.act(a, x);
      Vec rhs = R.act(ap, R.L.pmap(x));
      Vec coeff = R.rho(ax).power(p - 1).apply(a);
      f.axpy(rhs, 1, R.act(coeff, x));
      if (R.L.pmap(ax) != rhs) {
        hoch.fail(pair_witness("a", a, "x", x));
        break;
      }
    }
  }
  return r;
}

Report check_restricted_module(const LiePresentation& L, const LieModule& M,
                               const EnumerationBudget& budget) {
  Report r;
  r.title = "restricted L-module";
  const PrimeField& f = L.field();
  const std::size_t n = L.dim();
  Tally shape{r.add("one action matrix per L-basis vector")};
  if (M.action.size() != n) shape.fail("got " + std::to_string(M.action.size()));
  for (const auto& m : M.action)
    if (m.rows() != M.dim || m.cols() != M.dim) shape.fail("action matrix has wrong shape");
  if (shape.done()) return r;

  auto act = [&](const Vec& x) {
    Matrix out(f, M.dim, M.dim);
    for (std::size_t i = 0; i < n; ++i)
      if (x[i] != 0) out = out + M.action[i].scaled(x[i]);
    return out;
  };

  Tally lie{r.add("Lie module")};
  for (std::size_t i = 0; i < n && !lie.done(); ++i)
    for (std::size_t j = i + 1; j < n && !lie.done(); ++j) {
      Vec x = unit(n, i), y = unit(n, j);
      if (!(act(L.bracket(x, y)) == commutator(act(x), act(y)))) lie.fail("basis pair " + idx({i, j}));
    }

  auto sets = quantifier_sets(f.p(), {n}, budget.evaluations);
  Check& rc = r.add("restricted: x^[p] acts as the p-th power of x");
  rc.partial = sets[0].partial;
  Tally res{rc};
  for (const Vec& x : sets[0].elements) {
    if (res.done()) break;
    if (!(act(L.pmap(x)) == act(x).power(f.p()))) res.fail("x=" + to_string(x));
  }
  return r;
}

Report check_restricted_derivation(const LiePresentation& L, const Matrix& d,
                                   const EnumerationBudget& budget) {
  Report r;
  r.title = "restricted derivation";
  const PrimeField& f = L.field();
  const std::size_t n = L.dim();
  Tally leib{r.add("derivation of the bracket")};
  for (std::size_t i = 0; i < n && !leib.done(); ++i)
    for (std::size_t j = i + 1; j < n && !leib.done(); ++j) {
      Vec x = unit(n, i), y = unit(n, j);
      Vec rhs = f.added(L.bracket(d.apply(x), y), L.bracket(x, d.apply(y)));
      if (d.apply(L.bracket(x, y)) != rhs) leib.fail("basis pair " + idx({i, j}));
    }
  auto sets = quantifier_sets(f.p(), {n}, budget.evaluations);
  Check& rc = r.add("d(x^[p]) = ad_x^(p-1)(d x)");
  rc.partial = sets[0].partial;
  Tally res{rc};
  for (const Vec& x : sets[0].elements) {
    if (res.done()) break;
    if (d.apply(L.pmap(x)) != L.ad(x).power(f.p() - 1).apply(d.apply(x))) res.fail("x=" + to_string(x));
  }
  return r;
}

Report check_lr_representation(const RLRAlgebra& R, const LRRepresentation& M,
                               const EnumerationBudget& budget) {
  Report r;
  r.title = "representation of " + R.name;
  const PrimeField& f = R.field();
  const std::size_t na = R.A.dim(), nl = R.L.dim();
  const std::uint32_t p = f.p();
  Tally shape{r.add("representation data well-formed")};
  if (M.a_action.size() != na || M.pi.size() != nl) shape.fail("wrong number of matrices");
  if (shape.done()) return r;

  auto amat = [&](const Vec& a) {
    Matrix out(f, M.dim, M.dim);
    for (std::size_t i = 0; i < na; ++i)
      if (a[i] != 0) out = out + M.a_action[i].scaled(a[i]);
    return out;
  };
  auto pi = [&](const Vec& x) {
    Matrix out(f, M.dim, M.dim);
    for (std::size_t i = 0; i < nl; ++i)
      if (x[i] != 0) out = out + M.pi[i].scaled(x[i]);
    return out;
  };

  Tally massoc{r.add("A-module")};
  for (std::size_t a = 0; a < na && !massoc.done(); ++a)
    for (std::size_t b = 0; b < na && !massoc.done(); ++b) {
      Vec ea = unit(na, a), eb = unit(na, b);
      if (!(amat(R.A.multiply(ea, eb)) == amat(ea) * amat(eb))) massoc.fail("basis pair " + idx({a, b}));
    }

  Tally lie{r.add("pi is a Lie morphism")};
  for (std::size_t i = 0; i < nl && !lie.done(); ++i)
    for (std::size_t j = i + 1; j < nl && !lie.done(); ++j) {
      Vec x = unit(nl, i), y = unit(nl, j);
      if (!(pi(R.L.bracket(x, y)) == commutator(pi(x), pi(y)))) lie.fail("basis pair " + idx({i, j}));
    }

  Tally alin{r.add("pi is A-linear")};
  for (std::size_t a = 0; a < na && !alin.done(); ++a)
    for (std::size_t i = 0; i < nl && !alin.done(); ++i) {
      Vec ea = unit(na, a), x = unit(nl, i);
      if (!(pi(R.act(ea, x)) == amat(ea) * pi(x))) alin.fail("basis pair (a,x)=" + idx({a, i}));
    }

  Tally leib{r.add("pi(x)(a m) = a pi(x)(m) + rho(x)(a) m")};
  for (std::size_t i = 0; i < nl && !leib.done(); ++i)
    for (std::size_t a = 0; a < na && !leib.done(); ++a) {
      Vec x = unit(nl, i), ea = unit(na, a);
      Matrix lhs = pi(x) * amat(ea);
      Matrix rhs = amat(ea) * pi(x) + amat(R.rho(x).apply(ea));
      if (!(lhs == rhs)) leib.fail("basis pair (x,a)=" + idx({i, a}));
    }

  auto single = quantifier_sets(p, {nl}, budget.evaluations);
  Check& rc = r.add("pi restricted");
  rc.partial = single[0].partial;
  Tally res{rc};
  for (const Vec& x : single[0].elements) {
    if (res.done()) break;
    if (!(pi(R.L.pmap(x)) == pi(x).power(p))) res.fail("x=" + to_string(x));
  }

  // The lemma's display ends in "pi_x"; it is read here as pi(x).
  auto sets = quantifier_sets(p, {na, nl}, budget.evaluations);
  Check& lc = r.add("pi(ax)^p = a^p pi(x)^p + rho(ax)^(p-1)(a) pi(x)");
  lc.partial = sets[0].partial;
  lc.note = "trailing factor read as pi(x)";
  Tally lem{lc};
  for (const Vec& a : sets[0].elements) {
    if (lem.done()) break;
    Matrix ap = amat(R.A.power(a, p));
    for (const Vec& x : sets[1].elements) {
      Vec ax = R.act(a, x);
      Matrix rhs = ap * pi(x).power(p) + amat(R.rho(ax).power(p - 1).apply(a)) * pi(x);
      if (!(pi(ax).power(p) == rhs)) {
        lem.fail(pair_witness("a", a, "x", x));
        break;
      }
    }
  }
  return r;
}

}  // namespace rlr
