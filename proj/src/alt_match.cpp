#include "chase/alt_match.hpp"

#include <algorithm>

namespace chase {

namespace {

std::optional<GroundTerm> first_dropped_term(const GroundTermMapping& h_alt,
                                             const std::vector<GroundTerm>& fresh) {
  std::set<GroundTerm> image;
  for (const GroundTerm& t : fresh) image.insert(h_alt.apply(t));
  for (const GroundTerm& t : fresh)
    if (!image.count(t)) return t;
  return std::nullopt;
}

}  // namespace

bool is_alternative_match(const GroundTermMapping& h_alt, const Trigger& t,
                          std::size_t d, const FactSet& F) {
  if (d >= t.rule.head.size())
    throw std::out_of_range("disjunct index out of range: " + std::to_string(d));

  const TriggerInstance inst = instantiate(t);
  FactSet head;
  head.insert(inst.heads[d].begin(), inst.heads[d].end());
  if (!is_homomorphism(h_alt, head, F)) return false;

  for (const std::string& v : frontier(t.rule)) {
    const GroundTerm& image = t.subs.at(v);
    if (!(h_alt.apply(image) == image)) return false;
  }

  return first_dropped_term(h_alt, fresh_terms(t, d)).has_value();
}

std::vector<AltMatchWitness> find_alternative_matches(const ChaseBranch& b) {
  std::vector<AltMatchWitness> out;
  const FactSet& final_facts = result_of(b);
  std::set<GroundTerm> image_set = terms_of(final_facts);
  std::vector<GroundTerm> images(image_set.begin(), image_set.end());

  for (const ChaseNode& node : b.nodes) {
    if (!node.origin) continue;
    const auto& [trigger, d] = *node.origin;
    const std::vector<GroundTerm> fresh = fresh_terms(trigger, d);
    if (fresh.empty()) continue;  // clause (iii) needs a fresh term to drop

    const TriggerInstance inst = instantiate(trigger);
    FactSet head;
    head.insert(inst.heads[d].begin(), inst.heads[d].end());

    // Sorted for deterministic assignment order. Frontier images are never
    // fresh terms, so fixing only the fresh terms keeps clause (ii) intact.
    std::vector<GroundTerm> domain = fresh;
    std::sort(domain.begin(), domain.end());

    detail::search_assignments(
        domain, head, final_facts,
        [&](std::size_t) -> const std::vector<GroundTerm>& { return images; },
        [&](const std::map<GroundTerm, GroundTerm>& assignment) {
          GroundTermMapping h_alt{assignment};
          if (is_alternative_match(h_alt, trigger, d, final_facts)) {
            GroundTerm dropped = *first_dropped_term(h_alt, fresh);
            out.push_back(AltMatchWitness{trigger, d, std::move(h_alt), std::move(dropped)});
          }
          return false;
        });
  }
  return out;
}

}  // namespace chase
