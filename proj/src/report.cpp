#include "rlr/report.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace rlr {

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

Check& Report::add(std::string name, bool ok, std::string witness) {
  checks.push_back(Check{std::move(name), ok, std::move(witness), false, {}});
  return checks.back();
}

void Report::set_dimension(const std::string& name, long long value) {
  for (auto& [k, v] : dimensions)
    if (k == name) {
      v = value;
      return;
    }
  dimensions.emplace_back(name, value);
}

void Report::add_basis(const std::string& name, std::vector<Vec> vectors) {
  bases.emplace_back(name, std::move(vectors));
}

void Report::set_flag(const std::string& name, bool value) {
  for (auto& [k, v] : flags)
    if (k == name) {
      v = value;
      return;
    }
  flags.emplace_back(name, value);
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (Check c : other.checks) {
    c.name = prefix + c.name;
    checks.push_back(std::move(c));
  }
  for (const auto& [k, v] : other.dimensions) set_dimension(prefix + k, v);
  for (const auto& [k, v] : other.bases) bases.emplace_back(prefix + k, v);
  for (const auto& [k, v] : other.flags) set_flag(prefix + k, v);
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

const Check* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

std::string emit_text(const Report& r) {
  std::ostringstream os;
  os << "== " << r.title << " ==\n";
  for (const auto& c : r.checks) {
    os << (c.passed ? "[PASS] " : "[FAIL] ") << c.name;
    if (c.partial) os << " (partial verification)";
    if (!c.passed && !c.witness.empty()) os << "  witness: " << c.witness;
    if (!c.note.empty()) os << "  note: " << c.note;
    os << '\n';
  }
  for (const auto& [k, v] : r.flags) os << k << " = " << (v ? "true" : "false") << '\n';
  for (const auto& [k, v] : r.dimensions) os << k << " = " << v << '\n';
  for (const auto& [k, vecs] : r.bases) {
    os << k << ":";
    if (vecs.empty()) os << " {}";
    for (const auto& v : vecs) os << ' ' << to_string(v);
    os << '\n';
  }
  for (const auto& n : r.notes) os << "note: " << n << '\n';
  os << "verdict: " << (r.passed() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

std::string emit_json(const Report& r) {
  nlohmann::ordered_json j;
  j["title"] = r.title;
  j["passed"] = r.passed();
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["passed"] = c.passed;
    cj["partial"] = c.partial;
    if (!c.witness.empty()) cj["witness"] = c.witness;
    if (!c.note.empty()) cj["note"] = c.note;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  for (const auto& [k, v] : r.flags) j[k] = v;
  for (const auto& [k, v] : r.dimensions) j[k] = v;
  nlohmann::ordered_json bases = nlohmann::ordered_json::object();
  for (const auto& [k, vecs] : r.bases) bases[k] = vecs;
  j["bases"] = std::move(bases);
  j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

}  // namespace

std::string emit(const Report& report, ReportFormat format) {
  return format == ReportFormat::Json ? emit_json(report) : emit_text(report);
}

}  // namespace rlr
