#include "chase/rules.hpp"

namespace chase {

std::string to_text(const Fact& f) {
  std::string out = f.predicate + "(";
  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    if (i > 0) out += ",";
    out += f.terms[i].text();
  }
  out += ")";
  return out;
}

std::set<GroundTerm> terms_of(const FactSet& F) {
  std::set<GroundTerm> out;
  for (const Fact& f : F) out.insert(f.terms.begin(), f.terms.end());
  return out;
}

std::vector<std::string> body_variables(const Rule& r) {
  std::vector<std::string> out;
  for (const FunctionFreeAtom& a : r.body)
    for (const VarOrConst& t : a.terms)
      if (t.is_var() && std::find(out.begin(), out.end(), t.name) == out.end())
        out.push_back(t.name);
  return out;
}

namespace {

std::set<std::string> head_variables(const Rule& r) {
  std::set<std::string> out;
  for (const auto& disjunct : r.head)
    for (const FunctionFreeAtom& a : disjunct)
      for (const VarOrConst& t : a.terms)
        if (t.is_var()) out.insert(t.name);
  return out;
}

}  // namespace

std::vector<std::string> frontier(const Rule& r) {
  std::set<std::string> in_head = head_variables(r);
  std::vector<std::string> out;
  for (const std::string& v : body_variables(r))
    if (in_head.count(v)) out.push_back(v);
  return out;
}

std::vector<std::string> existential_variables(const Rule& r, std::size_t d) {
  std::vector<std::string> bv = body_variables(r);
  std::vector<std::string> out;
  for (const FunctionFreeAtom& a : r.head.at(d))
    for (const VarOrConst& t : a.terms)
      if (t.is_var() && std::find(bv.begin(), bv.end(), t.name) == bv.end() &&
          std::find(out.begin(), out.end(), t.name) == out.end())
        out.push_back(t.name);
  return out;
}

ValidationReport validate_ruleset(const RuleSet& rs) {
  ValidationReport report;
  std::set<std::uint32_t> ids;
  std::map<std::string, std::size_t> arities;

  auto check_atom = [&](const FunctionFreeAtom& a) {
    auto [it, fresh] = arities.emplace(a.predicate, a.terms.size());
    if (!fresh && it->second != a.terms.size())
      report.violations.push_back(
          {Violation::Kind::ArityMismatch,
           a.predicate + ": expected arity " + std::to_string(it->second) +
               ", got " + std::to_string(a.terms.size())});
  };

  for (const Rule& r : rs.rules) {
    if (!ids.insert(r.id).second)
      report.violations.push_back(
          {Violation::Kind::DuplicateRuleId, "rule id " + std::to_string(r.id)});
    bool head_ok = !r.head.empty();
    for (const auto& disjunct : r.head)
      if (disjunct.empty()) head_ok = false;
    if (!head_ok)
      report.violations.push_back(
          {Violation::Kind::EmptyHead, "rule id " + std::to_string(r.id)});
    for (const FunctionFreeAtom& a : r.body) check_atom(a);
    for (const auto& disjunct : r.head)
      for (const FunctionFreeAtom& a : disjunct) check_atom(a);
  }
  return report;
}

Signature signature_of(const RuleSet& rs) {
  Signature sig;
  auto scan_atom = [&](const FunctionFreeAtom& a) {
    sig.predicates.emplace(a.predicate, a.terms.size());
    for (const VarOrConst& t : a.terms)
      if (!t.is_var()) sig.constants.insert(t.name);
  };
  for (const Rule& r : rs.rules) {
    for (const FunctionFreeAtom& a : r.body) scan_atom(a);
    for (const auto& disjunct : r.head)
      for (const FunctionFreeAtom& a : disjunct) scan_atom(a);
  }
  return sig;
}

bool is_deterministic(const RuleSet& rs) {
  for (const Rule& r : rs.rules)
    if (r.head.size() != 1) return false;
  return true;
}

}  // namespace chase
