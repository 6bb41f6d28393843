#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "chase/rules.hpp"
#include "chase/term.hpp"

namespace chase {

// Variable name -> ground term. Used to instantiate rule bodies and heads.
using GroundSubstitution = std::map<std::string, GroundTerm>;

// A term-level mapping: a finite explicit map that defaults to the identity on
// constants and recurses through function terms outside its explicit domain.
// Explicit entries that move a constant are rejected (identity on constants is
// an invariant of the type).
class GroundTermMapping {
 public:
  GroundTermMapping() = default;
  explicit GroundTermMapping(std::map<GroundTerm, GroundTerm> entries);

  // Direct lookup first; then identity for constants; then recursion into the
  // arguments of a function term.
  GroundTerm apply(const GroundTerm& t) const;
  Fact apply(const Fact& f) const;
  FactSet apply(const FactSet& F) const;

  const std::map<GroundTerm, GroundTerm>& entries() const { return entries_; }
  bool operator==(const GroundTermMapping&) const = default;

 private:
  std::map<GroundTerm, GroundTerm> entries_;
};

// True iff h maps every fact of A to a fact of B.
bool is_homomorphism(const GroundTermMapping& h, const FactSet& A, const FactSet& B);

// Deterministic brute-force search for a homomorphism from A to B: assigns
// images in terms(B) to the non-constant terms of A, both sides ordered
// canonically, and returns the first assignment (in that lexicographic order)
// that maps A into B.
std::optional<GroundTermMapping> find_homomorphism(const FactSet& A, const FactSet& B);

// All endomorphisms of F with explicit domain exactly the non-constant terms
// of F, in the same deterministic search order.
std::vector<GroundTermMapping> enumerate_endomorphisms(const FactSet& F);

struct MappingFlags {
  bool strong = false;
  bool injective_on_domain = false;
  bool surjective_onto_terms_of_B = false;
};

// strong: for every candidate fact e over the predicates of A u B with
// arguments drawn from `domain`, e not in A implies h(e) not in B.
// injective_on_domain: no two distinct domain terms share an image.
// surjective_onto_terms_of_B: every term of B is the image of a domain term.
MappingFlags classify_mapping(const GroundTermMapping& h,
                              const std::set<GroundTerm>& domain,
                              const FactSet& A, const FactSet& B);

// Weak core: every endomorphism is an embedding (strong + injective on
// terms(F)). Strong core: every endomorphism is an automorphism (additionally
// surjective onto terms(F)).
bool is_weak_core(const FactSet& F);
bool is_strong_core(const FactSet& F);

namespace detail {

// Shared backtracking search: enumerate assignments of `domain` (canonically
// sorted non-constant terms) to candidate images, pruning by facts of A whose
// domain terms are all assigned. `emit` returns true to stop the search.
// `candidates(i)` lists the allowed images of domain[i], canonically sorted.
void search_assignments(
    const std::vector<GroundTerm>& domain, const FactSet& A, const FactSet& B,
    const std::function<const std::vector<GroundTerm>&(std::size_t)>& candidates,
    const std::function<bool(const std::map<GroundTerm, GroundTerm>&)>& emit);

}  // namespace detail

}  // namespace chase
