#include "chase/mapping.hpp"

#include <stdexcept>

namespace chase {

GroundTermMapping::GroundTermMapping(std::map<GroundTerm, GroundTerm> entries)
    : entries_(std::move(entries)) {
  for (const auto& [from, to] : entries_)
    if (from.is_constant() && !(from == to))
      throw std::invalid_argument("mapping must be the identity on constants: " +
                                  from.text());
}

GroundTerm GroundTermMapping::apply(const GroundTerm& t) const {
  auto it = entries_.find(t);
  if (it != entries_.end()) return it->second;
  if (t.is_constant()) return t;
  std::vector<GroundTerm> args;
  args.reserve(t.args().size());
  for (const GroundTerm& a : t.args()) args.push_back(apply(a));
  return GroundTerm::function(t.symbol(), std::move(args));
}

Fact GroundTermMapping::apply(const Fact& f) const {
  Fact out;
  out.predicate = f.predicate;
  out.terms.reserve(f.terms.size());
  for (const GroundTerm& t : f.terms) out.terms.push_back(apply(t));
  return out;
}

FactSet GroundTermMapping::apply(const FactSet& F) const {
  FactSet out;
  for (const Fact& f : F) out.insert(apply(f));
  return out;
}

bool is_homomorphism(const GroundTermMapping& h, const FactSet& A, const FactSet& B) {
  for (const Fact& f : A)
    if (!B.count(h.apply(f))) return false;
  return true;
}

namespace detail {

void search_assignments(
    const std::vector<GroundTerm>& domain, const FactSet& A, const FactSet& B,
    const std::function<const std::vector<GroundTerm>&(std::size_t)>& candidates,
    const std::function<bool(const std::map<GroundTerm, GroundTerm>&)>& emit) {
  // Index each fact of A by the highest-numbered domain term it contains, so it
  // can be checked as soon as that term receives an image.
  std::map<GroundTerm, std::size_t> index_of;
  for (std::size_t i = 0; i < domain.size(); ++i) index_of.emplace(domain[i], i);
  std::vector<std::vector<const Fact*>> checks(domain.size() + 1);
  for (const Fact& f : A) {
    std::size_t level = 0;  // facts with constant terms only: checked up front
    for (const GroundTerm& t : f.terms) {
      auto it = index_of.find(t);
      if (it != index_of.end()) level = std::max(level, it->second + 1);
    }
    checks[level].push_back(&f);
  }

  std::vector<GroundTerm> image;  // image[i] = image of domain[i]
  auto term_image = [&](const GroundTerm& t) -> const GroundTerm& {
    auto it = index_of.find(t);
    return it == index_of.end() ? t : image[it->second];
  };
  auto fact_ok = [&](const Fact& f) {
    Fact mapped;
    mapped.predicate = f.predicate;
    mapped.terms.reserve(f.terms.size());
    for (const GroundTerm& t : f.terms) mapped.terms.push_back(term_image(t));
    return B.count(mapped) != 0;
  };

  for (const Fact* f : checks[0])
    if (!fact_ok(*f)) return;

  bool stop = false;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (stop) return;
    if (i == domain.size()) {
      std::map<GroundTerm, GroundTerm> out;
      for (std::size_t k = 0; k < domain.size(); ++k) out.emplace(domain[k], image[k]);
      stop = emit(out);
      return;
    }
    for (const GroundTerm& cand : candidates(i)) {
      image.push_back(cand);
      bool ok = true;
      for (const Fact* f : checks[i + 1])
        if (!fact_ok(*f)) {
          ok = false;
          break;
        }
      if (ok) go(i + 1);
      image.pop_back();
      if (stop) return;
    }
  };
  go(0);
}

}  // namespace detail

namespace {

std::vector<GroundTerm> nonconstant_terms_sorted(const FactSet& F) {
  std::vector<GroundTerm> out;
  for (const GroundTerm& t : terms_of(F))
    if (!t.is_constant()) out.push_back(t);
  return out;  // std::set iteration is already canonical order
}

}  // namespace

std::optional<GroundTermMapping> find_homomorphism(const FactSet& A, const FactSet& B) {
  std::vector<GroundTerm> domain = nonconstant_terms_sorted(A);
  std::set<GroundTerm> image_set = terms_of(B);
  std::vector<GroundTerm> images(image_set.begin(), image_set.end());
  if (!domain.empty() && images.empty()) return std::nullopt;

  std::optional<GroundTermMapping> found;
  detail::search_assignments(
      domain, A, B, [&](std::size_t) -> const std::vector<GroundTerm>& { return images; },
      [&](const std::map<GroundTerm, GroundTerm>& assignment) {
        found = GroundTermMapping(assignment);
        return true;
      });
  return found;
}

std::vector<GroundTermMapping> enumerate_endomorphisms(const FactSet& F) {
  std::vector<GroundTerm> domain = nonconstant_terms_sorted(F);
  std::set<GroundTerm> image_set = terms_of(F);
  std::vector<GroundTerm> images(image_set.begin(), image_set.end());

  std::vector<GroundTermMapping> out;
  detail::search_assignments(
      domain, F, F, [&](std::size_t) -> const std::vector<GroundTerm>& { return images; },
      [&](const std::map<GroundTerm, GroundTerm>& assignment) {
        out.emplace_back(assignment);
        return false;
      });
  return out;
}

MappingFlags classify_mapping(const GroundTermMapping& h,
                              const std::set<GroundTerm>& domain,
                              const FactSet& A, const FactSet& B) {
  MappingFlags flags;

  // strong: no candidate fact outside A lands inside B.
  std::map<std::string, std::size_t> predicates;
  for (const Fact& f : A) predicates.emplace(f.predicate, f.terms.size());
  for (const Fact& f : B) predicates.emplace(f.predicate, f.terms.size());
  std::vector<GroundTerm> pool(domain.begin(), domain.end());
  flags.strong = true;
  for (const auto& [pred, arity] : predicates) {
    if (!flags.strong) break;
    Fact candidate;
    candidate.predicate = pred;
    candidate.terms.assign(arity, pool.empty() ? GroundTerm::constant("_") : pool[0]);
    std::function<void(std::size_t)> fill = [&](std::size_t pos) {
      if (!flags.strong) return;
      if (pos == arity) {
        if (!A.count(candidate) && B.count(h.apply(candidate))) flags.strong = false;
        return;
      }
      for (const GroundTerm& t : pool) {
        candidate.terms[pos] = t;
        fill(pos + 1);
      }
    };
    if (arity == 0) {
      if (!A.count(candidate) && B.count(h.apply(candidate))) flags.strong = false;
    } else if (!pool.empty()) {
      fill(0);
    }
  }

  std::set<GroundTerm> images;
  flags.injective_on_domain = true;
  for (const GroundTerm& t : domain)
    if (!images.insert(h.apply(t)).second) flags.injective_on_domain = false;

  flags.surjective_onto_terms_of_B = true;
  for (const GroundTerm& t : terms_of(B))
    if (!images.count(t)) flags.surjective_onto_terms_of_B = false;

  return flags;
}

namespace {

bool core_check(const FactSet& F, bool require_surjective) {
  const std::set<GroundTerm> domain = terms_of(F);
  for (const GroundTermMapping& h : enumerate_endomorphisms(F)) {
    MappingFlags flags = classify_mapping(h, domain, F, F);
    if (!flags.strong || !flags.injective_on_domain) return false;
    if (require_surjective && !flags.surjective_onto_terms_of_B) return false;
  }
  return true;
}

}  // namespace

bool is_weak_core(const FactSet& F) { return core_check(F, false); }
bool is_strong_core(const FactSet& F) { return core_check(F, true); }

}  // namespace chase
