#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "chase/term.hpp"

namespace chase {

// A body/head term: a variable or a constant name.
struct VarOrConst {
  enum class Kind { Var, Const };
  Kind kind = Kind::Var;
  std::string name;

  static VarOrConst var(std::string n) { return {Kind::Var, std::move(n)}; }
  static VarOrConst cst(std::string n) { return {Kind::Const, std::move(n)}; }
  bool is_var() const { return kind == Kind::Var; }
  auto operator<=>(const VarOrConst&) const = default;
};

template <typename T>
struct AtomT {
  std::string predicate;
  std::vector<T> terms;
};

using FunctionFreeAtom = AtomT<VarOrConst>;
using Fact = AtomT<GroundTerm>;

template <typename T>
bool operator==(const AtomT<T>& a, const AtomT<T>& b) {
  return a.predicate == b.predicate && a.terms == b.terms;
}
// Canonical fact order: predicate name, then argument terms by canonical term
// order. Used for FactSet iteration and all deterministic scans.
inline bool operator<(const Fact& a, const Fact& b) {
  if (a.predicate != b.predicate) return a.predicate < b.predicate;
  return std::lexicographical_compare(a.terms.begin(), a.terms.end(),
                                      b.terms.begin(), b.terms.end());
}

using FactSet = std::set<Fact>;

std::string to_text(const Fact& f);

// All distinct terms occurring in argument positions of facts of F.
std::set<GroundTerm> terms_of(const FactSet& F);

// A disjunctive existential rule: body -> head[0] v head[1] v ... where each
// disjunct is a conjunction of atoms. Head variables absent from the body are
// existentially quantified per disjunct.
struct Rule {
  std::uint32_t id = 0;
  std::vector<FunctionFreeAtom> body;
  std::vector<std::vector<FunctionFreeAtom>> head;

  bool operator==(const Rule&) const = default;
};

// Body variables in order of first occurrence.
std::vector<std::string> body_variables(const Rule& r);
// Frontier: variables occurring in the body and in at least one head disjunct,
// in order of first body occurrence.
std::vector<std::string> frontier(const Rule& r);
// Variables of disjunct d that do not occur in the body, in order of first
// occurrence within the disjunct. Pre: d < r.head.size().
std::vector<std::string> existential_variables(const Rule& r, std::size_t d);

struct RuleSet {
  std::vector<Rule> rules;

  bool operator==(const RuleSet&) const = default;
};

struct Signature {
  std::map<std::string, std::size_t> predicates;  // name -> arity
  std::set<std::string> constants;
};

struct Violation {
  enum class Kind { DuplicateRuleId, EmptyHead, ArityMismatch };
  Kind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks: distinct rule ids, non-empty heads (at least one disjunct, no empty
// disjunct), and a consistent arity per predicate across all atoms (first
// occurrence in rule order fixes the expected arity).
ValidationReport validate_ruleset(const RuleSet& rs);

// Predicates with arities plus every constant mentioned in a body or head.
// Pre: validate_ruleset(rs).ok().
Signature signature_of(const RuleSet& rs);

// True iff every rule has exactly one head disjunct.
bool is_deterministic(const RuleSet& rs);

struct KnowledgeBase {
  RuleSet rules;
  FactSet db;  // function-free: constants only, no "*"
};

}  // namespace chase
