#include "rlr/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "rlr/errors.hpp"

namespace rlr {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InputError("field " + path + ": " + what);
}

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void expect_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    if (!known) fail(path + "." + key, "unknown field");
  }
}

const Json& member(const Json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing");
  return *it;
}

const Json& array_at(const Json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array");
  return v;
}

std::size_t read_count(const Json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 0) fail(path, "expected a non-negative integer");
  return v.get<std::size_t>();
}

std::size_t read_index(const Json& v, std::size_t bound, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer index");
  long long i = v.get<long long>();
  if (i < 0 || static_cast<std::size_t>(i) >= bound)
    fail(path, "index " + std::to_string(i) + " out of range [0, " + std::to_string(bound) + ")");
  return static_cast<std::size_t>(i);
}

Scalar read_value(const Json& v, std::uint32_t p, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer value");
  long long x = v.get<long long>();
  if (x < 0 || x >= static_cast<long long>(p))
    fail(path, "value " + std::to_string(x) + " is not a residue in [0, " + std::to_string(p) + ")");
  return static_cast<Scalar>(x);
}

Vec read_vector(const Json& v, std::size_t dim, std::uint32_t p, const std::string& path) {
  array_at(v, path);
  if (v.size() != dim) fail(path, "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(v.size()));
  Vec out(dim);
  for (std::size_t i = 0; i < dim; ++i) out[i] = read_value(v[i], p, path + "[" + std::to_string(i) + "]");
  return out;
}

SparseTable finish_table(SparseTable t, const std::string& path) {
  std::sort(t.begin(), t.end());
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i].index == t[i - 1].index) fail(path, "duplicate entry at index " + to_string(Vec(t[i].index.begin(), t[i].index.end())));
  std::erase_if(t, [](const SparseEntry& e) { return e.value == 0; });
  return t;
}

/// Entries [i_1, ..., i_m, v] with i_r < bounds[r].
SparseTable read_table(const Json& arr, const std::vector<std::size_t>& bounds, std::uint32_t p,
                       const std::string& path) {
  array_at(arr, path);
  SparseTable t;
  for (std::size_t n = 0; n < arr.size(); ++n) {
    const std::string ep = path + "[" + std::to_string(n) + "]";
    const Json& e = arr[n];
    if (!e.is_array() || e.size() != bounds.size() + 1)
      fail(ep, "expected a tuple of " + std::to_string(bounds.size()) + " indices and a value");
    SparseEntry entry;
    for (std::size_t r = 0; r < bounds.size(); ++r) entry.index.push_back(read_index(e[r], bounds[r], ep));
    entry.value = read_value(e[bounds.size()], p, ep);
    t.push_back(std::move(entry));
  }
  return finish_table(std::move(t), path);
}

/// Entries [[x_0, ..., x_{n-1}], k, v].
SparseTable read_omega(const Json& arr, std::size_t n, std::uint32_t p, const std::string& path) {
  array_at(arr, path);
  SparseTable t;
  for (std::size_t m = 0; m < arr.size(); ++m) {
    const std::string ep = path + "[" + std::to_string(m) + "]";
    const Json& e = arr[m];
    if (!e.is_array() || e.size() != 3) fail(ep, "expected [[element coordinates], k, value]");
    Vec x = read_vector(e[0], n, p, ep + "[0]");
    SparseEntry entry{std::vector<std::size_t>(x.begin(), x.end()), 0};
    entry.index.push_back(read_index(e[1], n, ep));
    entry.value = read_value(e[2], p, ep);
    t.push_back(std::move(entry));
  }
  return finish_table(std::move(t), path);
}

std::vector<std::string> read_labels(const Json& obj, std::size_t dim, const std::string& path) {
  auto it = obj.find("labels");
  if (it == obj.end()) return {};
  array_at(*it, path + ".labels");
  if (it->size() != dim) fail(path + ".labels", "expected " + std::to_string(dim) + " labels");
  std::vector<std::string> out;
  for (const auto& l : *it) {
    if (!l.is_string()) fail(path + ".labels", "labels must be strings");
    out.push_back(l.get<std::string>());
  }
  return out;
}

struct Dims {
  std::uint32_t p;
  std::size_t a, l;
};

CochainSection read_cochain(const Json& obj, const Dims& d, const std::string& path,
                            std::initializer_list<const char*> extra = {}) {
  std::vector<const char*> allowed{"mu", "omega", "theta"};
  allowed.insert(allowed.end(), extra.begin(), extra.end());
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, _] : obj.items())
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      fail(path + "." + key, "unknown field");
  CochainSection s;
  if (auto it = obj.find("mu"); it != obj.end()) {
    s.mu = read_table(*it, {d.l, d.l, d.l}, d.p, path + ".mu");
    for (const auto& e : s.mu)
      if (e.index[0] == e.index[1]) fail(path + ".mu", "mu is alternating; mu(e_i, e_i) must be zero");
  }
  if (auto it = obj.find("omega"); it != obj.end()) s.omega = read_omega(*it, d.l, d.p, path + ".omega");
  if (auto it = obj.find("theta"); it != obj.end()) s.theta = read_table(*it, {d.l, d.a, d.a}, d.p, path + ".theta");
  return s;
}

// ---------------------------------------------------------------------------
// Writing. Arrays holding no objects are printed on one line.

bool has_object(const Json& j) {
  if (j.is_object()) return true;
  if (j.is_array())
    for (const auto& e : j)
      if (has_object(e)) return true;
  return false;
}

void write(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    std::size_t n = 0;
    for (const auto& [key, value] : j.items()) {
      os << pad << Json(key).dump() << ": ";
      write(os, value, indent + 2);
      os << (++n < j.size() ? ",\n" : "\n");
    }
    os << close << '}';
  } else if (j.is_array() && has_object(j)) {
    os << "[\n";
    for (std::size_t n = 0; n < j.size(); ++n) {
      os << pad;
      write(os, j[n], indent + 2);
      os << (n + 1 < j.size() ? ",\n" : "\n");
    }
    os << close << ']';
  } else if (j.is_array() && j.size() > 0 && j[0].is_array()) {
    os << '[';
    for (std::size_t n = 0; n < j.size(); ++n) os << (n ? ", " : "") << j[n].dump();
    os << ']';
  } else {
    os << j.dump();
  }
}

Json table_json(const SparseTable& t) {
  Json arr = Json::array();
  for (const auto& e : t) {
    Json row = Json::array();
    for (auto i : e.index) row.push_back(i);
    row.push_back(e.value);
    arr.push_back(std::move(row));
  }
  return arr;
}

Json omega_json(const SparseTable& t) {
  Json arr = Json::array();
  for (const auto& e : t) {
    Json x = Json::array();
    for (std::size_t i = 0; i + 1 < e.index.size(); ++i) x.push_back(e.index[i]);
    arr.push_back(Json::array({x, e.index.back(), e.value}));
  }
  return arr;
}

Json cochain_json(const CochainSection& s) {
  Json j = Json::object();
  j["mu"] = table_json(s.mu);
  j["omega"] = omega_json(s.omega);
  j["theta"] = table_json(s.theta);
  return j;
}

SparseTable matrix_table(const Matrix& m, std::optional<std::size_t> lead = std::nullopt) {
  SparseTable t;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0) {
        SparseEntry e;
        if (lead) e.index.push_back(*lead);
        e.index.push_back(r);
        e.index.push_back(c);
        e.value = m(r, c);
        t.push_back(std::move(e));
      }
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------

AlgebraFile parse_algebra_file(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw InputError("parse error at " + line_col(text, e.byte) + ": " + msg);
  }
  const std::string top = "$";
  expect_keys(root, top, {"name", "p", "A", "L", "action", "anchor", "cochain", "deformation", "automorphism", "candidate"});

  AlgebraFile f;
  if (auto it = root.find("name"); it != root.end()) {
    if (!it->is_string()) fail("$.name", "expected a string");
    f.name = it->get<std::string>();
  }
  const Json& pj = member(root, top, "p");
  if (!pj.is_number_integer() || pj.get<long long>() < 2) fail("$.p", "expected a prime");
  f.p = pj.get<std::uint32_t>();
  try {
    PrimeField check(f.p);
  } catch (const Error& e) {
    fail("$.p", e.what());
  }

  if (auto it = root.find("A"); it != root.end()) {
    expect_keys(*it, "$.A", {"dim", "labels", "mult"});
    AlgebraSection a;
    a.dim = read_count(member(*it, "$.A", "dim"), "$.A.dim");
    a.labels = read_labels(*it, a.dim, "$.A");
    if (auto m = it->find("mult"); m != it->end()) a.mult = read_table(*m, {a.dim, a.dim, a.dim}, f.p, "$.A.mult");
    f.A = std::move(a);
  }
  if (auto it = root.find("L"); it != root.end()) {
    expect_keys(*it, "$.L", {"dim", "labels", "bracket", "pmap"});
    LieSection l;
    l.dim = read_count(member(*it, "$.L", "dim"), "$.L.dim");
    l.labels = read_labels(*it, l.dim, "$.L");
    if (auto b = it->find("bracket"); b != it->end()) l.bracket = read_table(*b, {l.dim, l.dim, l.dim}, f.p, "$.L.bracket");
    const Json& rows = array_at(member(*it, "$.L", "pmap"), "$.L.pmap");
    if (rows.size() != l.dim) fail("$.L.pmap", "expected one row per basis vector");
    for (std::size_t i = 0; i < l.dim; ++i)
      l.pmap.push_back(read_vector(rows[i], l.dim, f.p, "$.L.pmap[" + std::to_string(i) + "]"));
    f.L = std::move(l);
  }

  const bool rlr_sections = root.contains("action") || root.contains("anchor");
  if (rlr_sections && !f.has_rlr()) fail("$", "action and anchor need both the A and the L section");
  const Dims dims{f.p, f.A ? f.A->dim : 0, f.L ? f.L->dim : 0};
  if (auto it = root.find("action"); it != root.end())
    f.action = read_table(*it, {dims.a, dims.l, dims.l}, f.p, "$.action");
  if (auto it = root.find("anchor"); it != root.end()) {
    array_at(*it, "$.anchor");
    if (it->size() != dims.l) fail("$.anchor", "expected one matrix per L-basis vector");
    for (std::size_t i = 0; i < dims.l; ++i) {
      const std::string mp = "$.anchor[" + std::to_string(i) + "]";
      const Json& m = array_at((*it)[i], mp);
      if (m.size() != dims.a) fail(mp, "expected " + std::to_string(dims.a) + " rows");
      std::vector<Vec> rows;
      for (std::size_t r = 0; r < dims.a; ++r) rows.push_back(read_vector(m[r], dims.a, f.p, mp + "[" + std::to_string(r) + "]"));
      f.anchor.push_back(std::move(rows));
    }
  }

  auto needs_rlr = [&](const char* key) {
    if (root.contains(key) && !f.has_rlr()) fail(std::string("$.") + key, "needs both the A and the L section");
  };
  for (const char* key : {"cochain", "deformation", "automorphism", "candidate"}) needs_rlr(key);

  if (auto it = root.find("cochain"); it != root.end()) f.cochain = read_cochain(*it, dims, "$.cochain");
  if (auto it = root.find("deformation"); it != root.end()) {
    expect_keys(*it, "$.deformation", {"order", "coefficients"});
    DeformationSection d;
    d.order = read_count(member(*it, "$.deformation", "order"), "$.deformation.order");
    if (auto c = it->find("coefficients"); c != it->end()) {
      array_at(*c, "$.deformation.coefficients");
      for (std::size_t n = 0; n < c->size(); ++n) {
        const std::string cp = "$.deformation.coefficients[" + std::to_string(n) + "]";
        std::size_t t = read_count(member((*c)[n], cp, "t"), cp + ".t");
        if (t < 1 || t > d.order) fail(cp + ".t", "t-degree must lie in [1, order]");
        d.coefficients.emplace_back(t, read_cochain((*c)[n], dims, cp, {"t"}));
      }
    }
    std::sort(d.coefficients.begin(), d.coefficients.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t n = 1; n < d.coefficients.size(); ++n)
      if (d.coefficients[n].first == d.coefficients[n - 1].first)
        fail("$.deformation.coefficients", "t-degree " + std::to_string(d.coefficients[n].first) + " appears twice");
    f.deformation = std::move(d);
  }
  if (auto it = root.find("automorphism"); it != root.end()) {
    expect_keys(*it, "$.automorphism", {"order", "coefficients"});
    AutomorphismSection a;
    a.order = read_count(member(*it, "$.automorphism", "order"), "$.automorphism.order");
    if (auto c = it->find("coefficients"); c != it->end()) {
      array_at(*c, "$.automorphism.coefficients");
      for (std::size_t n = 0; n < c->size(); ++n) {
        const std::string cp = "$.automorphism.coefficients[" + std::to_string(n) + "]";
        expect_keys((*c)[n], cp, {"t", "phi"});
        std::size_t t = read_count(member((*c)[n], cp, "t"), cp + ".t");
        if (t < 1 || t > a.order) fail(cp + ".t", "t-degree must lie in [1, order]");
        a.coefficients.emplace_back(t, read_table(member((*c)[n], cp, "phi"), {dims.l, dims.l}, f.p, cp + ".phi"));
      }
    }
    std::sort(a.coefficients.begin(), a.coefficients.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t n = 1; n < a.coefficients.size(); ++n)
      if (a.coefficients[n].first == a.coefficients[n - 1].first)
        fail("$.automorphism.coefficients", "t-degree " + std::to_string(a.coefficients[n].first) + " appears twice");
    f.automorphism = std::move(a);
  }
  if (auto it = root.find("candidate"); it != root.end()) {
    expect_keys(*it, "$.candidate", {"gamma", "d"});
    CandidateSection c;
    if (auto g = it->find("gamma"); g != it->end()) c.gamma = read_table(*g, {dims.l, dims.l}, f.p, "$.candidate.gamma");
    if (auto d = it->find("d"); d != it->end()) c.d = read_table(*d, {dims.a, dims.a}, f.p, "$.candidate.d");
    f.candidate = std::move(c);
  }
  return f;
}

AlgebraFile read_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_algebra_file(buf.str());
}

std::string serialize(const AlgebraFile& f) {
  Json j;
  j["name"] = f.name;
  j["p"] = f.p;
  if (f.A) {
    Json a;
    a["dim"] = f.A->dim;
    if (!f.A->labels.empty()) a["labels"] = f.A->labels;
    a["mult"] = table_json(f.A->mult);
    j["A"] = std::move(a);
  }
  if (f.L) {
    Json l;
    l["dim"] = f.L->dim;
    if (!f.L->labels.empty()) l["labels"] = f.L->labels;
    l["bracket"] = table_json(f.L->bracket);
    l["pmap"] = f.L->pmap;
    j["L"] = std::move(l);
  }
  if (f.has_rlr()) {
    j["action"] = table_json(f.action);
    if (!f.anchor.empty()) j["anchor"] = f.anchor;
  }
  if (f.cochain) j["cochain"] = cochain_json(*f.cochain);
  if (f.deformation) {
    Json d;
    d["order"] = f.deformation->order;
    Json cs = Json::array();
    for (const auto& [t, c] : f.deformation->coefficients) {
      Json cj;
      cj["t"] = t;
      Json body = cochain_json(c);
      for (auto& [k, v] : body.items()) cj[k] = v;
      cs.push_back(std::move(cj));
    }
    d["coefficients"] = std::move(cs);
    j["deformation"] = std::move(d);
  }
  if (f.automorphism) {
    Json a;
    a["order"] = f.automorphism->order;
    Json cs = Json::array();
    for (const auto& [t, phi] : f.automorphism->coefficients) {
      Json cj;
      cj["t"] = t;
      cj["phi"] = table_json(phi);
      cs.push_back(std::move(cj));
    }
    a["coefficients"] = std::move(cs);
    j["automorphism"] = std::move(a);
  }
  if (f.candidate) {
    Json c;
    c["gamma"] = table_json(f.candidate->gamma);
    c["d"] = table_json(f.candidate->d);
    j["candidate"] = std::move(c);
  }
  std::ostringstream os;
  write(os, j, 0);
  os << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Conversions.

AlgebraFile file_from_example(const Example& ex) {
  AlgebraFile f;
  f.name = ex.name;
  if (ex.A) {
    const AlgebraPresentation& A = *ex.A;
    f.p = A.field().p();
    AlgebraSection s{A.dim(), A.labels(), {}};
    for (std::size_t i = 0; i < A.dim(); ++i)
      for (std::size_t j = 0; j < A.dim(); ++j)
        for (std::size_t k = 0; k < A.dim(); ++k)
          if (A.coef(i, j, k) != 0) s.mult.push_back({{i, j, k}, A.coef(i, j, k)});
    f.A = std::move(s);
  }
  if (ex.L) {
    const LiePresentation& L = *ex.L;
    f.p = L.field().p();
    LieSection s{L.dim(), L.labels(), {}, L.pmap_on_basis()};
    for (std::size_t i = 0; i < L.dim(); ++i)
      for (std::size_t j = 0; j < L.dim(); ++j)
        for (std::size_t k = 0; k < L.dim(); ++k)
          if (L.coef(i, j, k) != 0) s.bracket.push_back({{i, j, k}, L.coef(i, j, k)});
    f.L = std::move(s);
  }
  if (ex.R) {
    const RLRAlgebra& R = *ex.R;
    for (std::size_t a = 0; a < R.action.dim_a(); ++a)
      for (std::size_t j = 0; j < R.action.dim_v(); ++j)
        for (std::size_t k = 0; k < R.action.dim_v(); ++k)
          if (R.action.coef(a, j, k) != 0) f.action.push_back({{a, j, k}, R.action.coef(a, j, k)});
    for (const auto& m : R.anchor) {
      std::vector<Vec> rows;
      for (std::size_t r = 0; r < m.rows(); ++r) rows.emplace_back(m.row(r).begin(), m.row(r).end());
      f.anchor.push_back(std::move(rows));
    }
  }
  return f;
}

AlgebraPresentation to_algebra(const AlgebraFile& f) {
  if (!f.A) throw InputError("the command needs the A section");
  AlgebraPresentation A(f.name, PrimeField(f.p), f.A->dim, f.A->labels);
  for (const auto& e : f.A->mult) A.set_coef(e.index[0], e.index[1], e.index[2], e.value);
  return A;
}

LiePresentation to_lie(const AlgebraFile& f) {
  if (!f.L) throw InputError("the command needs the L section");
  LiePresentation L(PrimeField(f.p), f.L->dim, f.L->labels);
  for (const auto& e : f.L->bracket) L.set_coef(e.index[0], e.index[1], e.index[2], e.value);
  for (std::size_t i = 0; i < f.L->dim; ++i) L.set_pmap(i, f.L->pmap[i]);
  return L;
}

RLRAlgebra to_rlr(const AlgebraFile& f) {
  if (!f.has_rlr()) throw InputError("the command needs both the A and the L section");
  const PrimeField field(f.p);
  AlgebraPresentation A = to_algebra(f);
  LiePresentation L = to_lie(f);
  ModuleAction action(field, A.dim(), L.dim());
  for (const auto& e : f.action) action.set_coef(e.index[0], e.index[1], e.index[2], e.value);
  std::vector<Derivation> anchor;
  for (std::size_t i = 0; i < L.dim(); ++i)
    anchor.push_back(f.anchor.empty() ? Matrix(field, A.dim(), A.dim()) : Matrix::from_rows(field, A.dim(), f.anchor[i]));
  return RLRAlgebra{f.name, std::move(A), std::move(L), std::move(action), std::move(anchor)};
}

namespace {

CEChain mu_chain(const LRContext& ctx, const SparseTable& mu, const std::string& path) {
  const PrimeField& f = ctx.R.field();
  const std::size_t n = ctx.dim_l();
  // (i, j, k) with i < j, collected with the sign of the given order
  std::map<std::array<std::size_t, 3>, std::pair<Scalar, bool>> seen;
  CEChain c(f, 2, n, n);
  for (const auto& e : mu) {
    std::size_t i = e.index[0], j = e.index[1], k = e.index[2];
    Scalar v = i < j ? e.value : f.neg(e.value);
    std::array<std::size_t, 3> key{std::min(i, j), std::max(i, j), k};
    auto [it, fresh] = seen.emplace(key, std::make_pair(v, true));
    if (!fresh && it->second.first != v)
      fail(path, "mu(e_" + std::to_string(i) + ", e_" + std::to_string(j) + ") disagrees with its transpose");
  }
  for (const auto& [key, val] : seen) {
    Vec cur = c.at_basis({key[0], key[1]});
    cur[key[2]] = val.first;
    c.set_basis({key[0], key[1]}, cur);
  }
  return c;
}

CEChain theta_chain(const LRContext& ctx, const SparseTable& theta, const std::string& path) {
  const PrimeField& f = ctx.R.field();
  const std::size_t na = ctx.R.A.dim();
  std::vector<Matrix> mats(ctx.dim_l(), Matrix(f, na, na));
  for (const auto& e : theta) mats[e.index[0]](e.index[1], e.index[2]) = e.value;
  CEChain c(f, 1, ctx.dim_l(), ctx.dim_g());
  for (std::size_t i = 0; i < mats.size(); ++i) {
    Vec coords;
    try {
      coords = ctx.G.coordinates(mats[i]);
    } catch (const DomainError&) {
      fail(path, "theta(e_" + std::to_string(i) + ") is not a derivation of A");
    }
    c.set_basis({i}, coords);
  }
  return c;
}

Matrix square_matrix(const PrimeField& f, std::size_t n, const SparseTable& t) {
  Matrix m(f, n, n);
  for (const auto& e : t) m(e.index[0], e.index[1]) = e.value;
  return m;
}

}  // namespace

LRCochain to_lr_cochain(const LRContext& ctx, const CochainSection& s) {
  if (ctx.R.p() != 2) throw InputError("the LR chart with omega on basis vectors is the characteristic-2 chart");
  LRCochain c = zero_lr_cochain(ctx, 2);
  c.first.phi = mu_chain(ctx, s.mu, "cochain.mu");
  const std::size_t n = ctx.dim_l();
  std::vector<Vec> omega(n, Vec(n, 0));
  for (const auto& e : s.omega) {
    std::vector<std::size_t> x(e.index.begin(), e.index.end() - 1);
    auto nonzero = std::count_if(x.begin(), x.end(), [](std::size_t v) { return v != 0; });
    auto pos = std::find(x.begin(), x.end(), 1);
    if (nonzero != 1 || pos == x.end())
      fail("cochain.omega", "in characteristic 2 omega is given on basis vectors; other values follow by polarization");
    omega[static_cast<std::size_t>(pos - x.begin())][e.index.back()] = e.value;
  }
  for (std::size_t i = 0; i < n; ++i) c.first.omega[i].set_value(0, omega[i]);
  c.third.phi = theta_chain(ctx, s.theta, "cochain.theta");
  return c;
}

PCochain2 to_p_cochain(const LRContext& ctx, const CochainSection& s) {
  if (ctx.R.p() == 2) return p_cochain_from_lr(ctx, to_lr_cochain(ctx, s));
  PCochain2 c = zero_p_cochain(ctx);
  c.mu = mu_chain(ctx, s.mu, "cochain.mu");
  for (const auto& e : s.omega) {
    Vec x(e.index.begin(), e.index.end() - 1);
    c.omega[index_of_element(ctx.R.p(), x)][e.index.back()] = e.value;
  }
  c.theta = theta_chain(ctx, s.theta, "cochain.theta");
  return c;
}

PCochain1 to_p_candidate(const LRContext& ctx, const CandidateSection& s) {
  const PrimeField& f = ctx.R.field();
  const std::size_t n = ctx.dim_l();
  CEChain gamma(f, 1, n, n);
  Matrix g = square_matrix(f, n, s.gamma);  // row i: gamma(e_i)
  for (std::size_t i = 0; i < n; ++i) gamma.set_basis({i}, Vec(g.row(i).begin(), g.row(i).end()));
  Vec d;
  try {
    d = ctx.G.coordinates(square_matrix(f, ctx.R.A.dim(), s.d));
  } catch (const DomainError&) {
    fail("candidate.d", "not a derivation of A");
  }
  return PCochain1{std::move(gamma), std::move(d)};
}

TruncatedDeformation to_deformation(const LRContext& ctx, const DeformationSection& s) {
  TruncatedDeformation d = undeformed(ctx, 0);
  std::size_t next = 0;
  for (std::size_t t = 1; t <= s.order; ++t) {
    if (next < s.coefficients.size() && s.coefficients[next].first == t) {
      append_coefficient(ctx, d, to_p_cochain(ctx, s.coefficients[next].second));
      ++next;
    } else {
      append_coefficient(ctx, d, zero_p_cochain(ctx));
    }
  }
  return d;
}

FormalAutomorphism to_automorphism(const LRContext& ctx, const AutomorphismSection& s) {
  const PrimeField& f = ctx.R.field();
  const std::size_t n = ctx.dim_l();
  FormalAutomorphism phi{{Matrix::identity(f, n)}};
  for (std::size_t t = 1; t <= s.order; ++t) phi.phi.push_back(Matrix(f, n, n));
  for (const auto& [t, entries] : s.coefficients) phi.phi[t] = square_matrix(f, n, entries);
  return phi;
}

CochainSection cochain_section(const LRContext& ctx, const PCochain2& c) {
  const std::uint32_t p = ctx.R.p();
  const std::size_t n = ctx.dim_l();
  CochainSection s;
  for (std::size_t t = 0; t < c.mu.tuple_count(); ++t) {
    auto v = c.mu.value(t);
    for (std::size_t k = 0; k < n; ++k)
      if (v[k] != 0) s.mu.push_back({{c.mu.tuple(t)[0], c.mu.tuple(t)[1], k}, v[k]});
  }
  auto add_omega = [&](const Vec& x, const Vec& value) {
    for (std::size_t k = 0; k < n; ++k)
      if (value[k] != 0) {
        SparseEntry e{std::vector<std::size_t>(x.begin(), x.end()), value[k]};
        e.index.push_back(k);
        s.omega.push_back(std::move(e));
      }
  };
  if (p == 2) {
    for (std::size_t i = 0; i < n; ++i) add_omega(unit(n, i), c.omega_at(p, unit(n, i)));
  } else {
    for (std::uint64_t i = 0; i < c.omega.size(); ++i) add_omega(element_from_index(p, n, i), c.omega[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    SparseTable m = matrix_table(ctx.G.to_matrix(c.theta.at_basis({i})), i);
    s.theta.insert(s.theta.end(), m.begin(), m.end());
  }
  std::sort(s.mu.begin(), s.mu.end());
  std::sort(s.omega.begin(), s.omega.end());
  std::sort(s.theta.begin(), s.theta.end());
  return s;
}

DeformationSection deformation_section(const LRContext& ctx, const TruncatedDeformation& d) {
  DeformationSection s;
  s.order = d.order();
  for (std::size_t k = 1; k <= d.order(); ++k) {
    CochainSection c = cochain_section(ctx, coefficient(ctx, d, k));
    if (!c.mu.empty() || !c.omega.empty() || !c.theta.empty()) s.coefficients.emplace_back(k, std::move(c));
  }
  return s;
}

}  // namespace rlr
