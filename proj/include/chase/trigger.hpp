#pragma once

#include <stdexcept>

#include "chase/mapping.hpp"
#include "chase/rules.hpp"

namespace chase {

// Which facts make a trigger redundant.
//  Skolem: some disjunct's Skolemized head is already present verbatim.
//  Restricted: some disjunct is satisfiable in F with the frontier fixed by the
//  trigger's substitution and existential variables ranging over terms of F.
enum class ObsolescenceKind { Skolem, Restricted };

struct UnmappedVariable : std::runtime_error {
  explicit UnmappedVariable(const std::string& var)
      : std::runtime_error("substitution has no image for variable: " + var) {}
};

// A rule paired with a ground substitution covering its body variables.
struct Trigger {
  Rule rule;
  GroundSubstitution subs;
};

// Canonical trigger order: rule id, then the substitution as a sorted
// (variable, term) list. Used to fix enumeration order.
bool trigger_less(const Trigger& a, const Trigger& b);

struct TriggerInstance {
  std::vector<Fact> body;
  std::vector<std::vector<Fact>> heads;  // one fact list per disjunct
};

// Instantiates body and all head disjuncts. Frontier variables take their
// images from the substitution; each existential variable v of disjunct d
// becomes the Skolem term f[rule.id,d,v](frontier images). Throws
// UnmappedVariable if the substitution misses a body variable.
TriggerInstance instantiate(const Trigger& t);

// The Skolem terms disjunct d of t would introduce (one per existential
// variable of the disjunct, in first-occurrence order).
std::vector<GroundTerm> fresh_terms(const Trigger& t, std::size_t d);

// Body facts all present in F.
bool is_loaded(const Trigger& t, const FactSet& F);

bool is_obsolete(ObsolescenceKind kind, const Trigger& t, const FactSet& F);

// Loaded and not obsolete.
bool is_active(ObsolescenceKind kind, const Trigger& t, const FactSet& F);

// Same rule id and substitutions agreeing on every body variable.
bool trigger_equiv(const Trigger& a, const Trigger& b);

// All triggers whose body matches into F, one per distinct body-variable
// assignment, sorted canonically. Pre: validate_ruleset(rs).ok().
std::vector<Trigger> enumerate_triggers(const RuleSet& rs, const FactSet& F);

namespace detail {

// Enumerates extensions of `binding` matching the function-free atoms into F;
// calls `emit` with each complete binding (returns true to stop). Exposed for
// reuse by rule-satisfaction checks.
void match_atoms(const std::vector<FunctionFreeAtom>& atoms, const FactSet& F,
                 GroundSubstitution binding,
                 const std::function<bool(const GroundSubstitution&)>& emit);

// Applies the substitution to a function-free atom; existential variables must
// all be bound. Throws UnmappedVariable otherwise.
Fact apply_substitution(const FunctionFreeAtom& atom, const GroundSubstitution& subs);

}  // namespace detail

}  // namespace chase
