#pragma once

#include "chase/engine.hpp"
#include "chase/mapping.hpp"

namespace chase {

// Evidence that an applied trigger's output is redundant in the final fact set:
// the mapped head disjunct folds back into F while fixing the frontier images
// and dropping at least one of the disjunct's fresh Skolem terms.
struct AltMatchWitness {
  Trigger trigger;
  std::size_t disjunct_index = 0;
  GroundTermMapping h_alt;
  GroundTerm dropped_term = GroundTerm::constant("_");
};

// The three clauses: (i) h_alt maps instantiate(t).heads[d] into F; (ii) h_alt
// fixes every frontier image of t; (iii) some fresh term of (t, d) is not the
// h_alt-image of any fresh term of (t, d). Throws std::out_of_range if d is not
// a disjunct of t's rule.
bool is_alternative_match(const GroundTermMapping& h_alt, const Trigger& t,
                          std::size_t d, const FactSet& F);

// Searches every applied (trigger, disjunct) of the branch for alternative
// matches against result_of(b): assignments of the disjunct's fresh terms to
// terms of the result, in canonical order. Returns all witnesses found, each
// with the first dropped fresh term recorded.
std::vector<AltMatchWitness> find_alternative_matches(const ChaseBranch& b);

}  // namespace chase
