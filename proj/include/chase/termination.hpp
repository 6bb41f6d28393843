#pragma once

#include <optional>

#include "chase/trigger.hpp"

namespace chase {

// Acyclicity notions, ordered from most to least aggressive blocking of the
// parallel determinized chase:
//  Mfa  — a trigger is blocked when every disjunct's Skolemized head is present.
//  Dmfa — blocked when it is Skolem-obsolete against its backtracked facts.
//  Rmfa — blocked when it is Restricted-obsolete against its backtracked facts.
enum class MfaNotion { Mfa, Dmfa, Rmfa };

struct MfaOutcome {
  enum class Kind { AcyclicFixpoint, CyclicTermFound, BudgetExhausted };
  Kind kind = Kind::AcyclicFixpoint;
  FactSet mfa_set;                    // the fixpoint (AcyclicFixpoint only)
  std::optional<GroundTerm> witness;  // the cyclic term (CyclicTermFound only)
  std::size_t rounds = 0;
};

struct TerminationVerdict {
  bool acyclic = false;
  std::optional<GroundTerm> witness;  // set iff not acyclic
  std::size_t rounds = 0;
  std::size_t mfa_set_size = 0;       // set iff acyclic
};

struct UnknownRuleId : std::runtime_error {
  explicit UnknownRuleId(std::uint32_t id)
      : std::runtime_error("no rule with id " + std::to_string(id)) {}
};

// Fresh-constant allocator for backtracking; confined to one obsolescence
// check. Names live in the reserved "_bt<n>" namespace, which the input
// grammar cannot produce.
class FreshConstants {
 public:
  GroundTerm fresh() { return GroundTerm::constant("_bt" + std::to_string(next_++)); }

 private:
  std::size_t next_ = 0;
};

// All facts over the rule set's predicates with arguments drawn from
// constants(rs) plus the critical constant "*".
FactSet critical_instance(const RuleSet& rs);

// Replaces every "*" occurrence in the trigger's substitution images with a
// distinct fresh constant; occurrences of one variable's image are renamed
// once (shared across repeated body occurrences), and rule-set constants are
// untouched. Variables are processed in first-body-occurrence order, term
// positions left to right.
Trigger rename_apart(const Trigger& t, FreshConstants& ctx);

// The facts necessarily present whenever (an instance of) t is loaded: t's
// instantiated body plus, recursively for every Skolem term in the set, the
// producing trigger's instantiated body and full head disjunct. The producer
// of f[r,d,v](args) maps rule r's frontier to args and its remaining body
// variables to fresh constants (one substitution per (rule, args), shared by
// sibling Skolem terms). Pre: t contains no "*". Throws UnknownRuleId if a
// Skolem symbol references a rule absent from rs.
FactSet backtrack_facts(const Trigger& t, const RuleSet& rs, FreshConstants& ctx);

// The blocking test of the parallel determinized chase for the given notion
// (see MfaNotion). For Dmfa/Rmfa the trigger is renamed apart and tested
// against its backtracked facts; F itself is only consulted by Mfa.
bool moc_is_obsolete(MfaNotion notion, const Trigger& t, const FactSet& F,
                     const RuleSet& rs);

// Saturates the critical instance with the parallel determinized chase
// (disjunctions treated as conjunctions, every unblocked unapplied trigger
// fired each round, all disjuncts at once). Stops with CyclicTermFound as soon
// as a new fact contains a cyclic term (first such term in canonical order),
// with AcyclicFixpoint when a round fires nothing new, or with BudgetExhausted
// after `budget` rounds (no budget = run to the intrinsic halt).
MfaOutcome compute_mfa_set(const RuleSet& rs, MfaNotion notion,
                           std::optional<std::size_t> budget = std::nullopt);

// A round budget that provably exceeds any acyclic run: derived from the depth
// bound on non-cyclic terms (each round adds a fact or halts), saturating to
// avoid overflow on large signatures.
std::size_t intrinsic_round_budget(const RuleSet& rs);

// Acyclic iff the parallel determinized chase reaches a fixpoint without ever
// deriving a cyclic term. Pre: validate_ruleset(rs).ok().
TerminationVerdict analyze_termination(const RuleSet& rs, MfaNotion notion);

}  // namespace chase
