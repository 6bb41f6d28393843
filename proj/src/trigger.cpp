#include "chase/trigger.hpp"

#include <algorithm>

namespace chase {

bool trigger_less(const Trigger& a, const Trigger& b) {
  if (a.rule.id != b.rule.id) return a.rule.id < b.rule.id;
  return std::lexicographical_compare(
      a.subs.begin(), a.subs.end(), b.subs.begin(), b.subs.end(),
      [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return x.second < y.second;
      });
}

namespace detail {

Fact apply_substitution(const FunctionFreeAtom& atom, const GroundSubstitution& subs) {
  Fact out;
  out.predicate = atom.predicate;
  out.terms.reserve(atom.terms.size());
  for (const VarOrConst& t : atom.terms) {
    if (t.is_var()) {
      auto it = subs.find(t.name);
      if (it == subs.end()) throw UnmappedVariable(t.name);
      out.terms.push_back(it->second);
    } else {
      out.terms.push_back(GroundTerm::constant(t.name));
    }
  }
  return out;
}

void match_atoms(const std::vector<FunctionFreeAtom>& atoms, const FactSet& F,
                 GroundSubstitution binding,
                 const std::function<bool(const GroundSubstitution&)>& emit) {
  bool stop = false;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (stop) return;
    if (i == atoms.size()) {
      stop = emit(binding);
      return;
    }
    const FunctionFreeAtom& atom = atoms[i];
    for (const Fact& fact : F) {
      if (fact.predicate != atom.predicate || fact.terms.size() != atom.terms.size())
        continue;
      std::vector<std::string> bound_here;
      bool ok = true;
      for (std::size_t k = 0; k < atom.terms.size() && ok; ++k) {
        const VarOrConst& t = atom.terms[k];
        if (t.is_var()) {
          auto it = binding.find(t.name);
          if (it == binding.end()) {
            binding.emplace(t.name, fact.terms[k]);
            bound_here.push_back(t.name);
          } else if (!(it->second == fact.terms[k])) {
            ok = false;
          }
        } else if (!(fact.terms[k] == GroundTerm::constant(t.name))) {
          ok = false;
        }
      }
      if (ok) go(i + 1);
      for (const std::string& v : bound_here) binding.erase(v);
      if (stop) return;
    }
  };
  go(0);
}

}  // namespace detail

TriggerInstance instantiate(const Trigger& t) {
  TriggerInstance out;
  out.body.reserve(t.rule.body.size());
  for (const FunctionFreeAtom& a : t.rule.body)
    out.body.push_back(detail::apply_substitution(a, t.subs));

  const std::vector<std::string> front = frontier(t.rule);
  std::vector<GroundTerm> front_images;
  front_images.reserve(front.size());
  for (const std::string& v : front) {
    auto it = t.subs.find(v);
    if (it == t.subs.end()) throw UnmappedVariable(v);
    front_images.push_back(it->second);
  }

  const std::vector<std::string> body_vars = body_variables(t.rule);
  out.heads.resize(t.rule.head.size());
  for (std::size_t d = 0; d < t.rule.head.size(); ++d) {
    GroundSubstitution head_subs = t.subs;
    for (const std::string& v : existential_variables(t.rule, d)) {
      SkolemFS sym{t.rule.id, static_cast<std::uint32_t>(d), v,
                   static_cast<std::uint32_t>(front_images.size())};
      // insert_or_assign: a stray substitution entry for an existential
      // variable's name must not shadow the Skolem term.
      head_subs.insert_or_assign(v, GroundTerm::function(std::move(sym), front_images));
    }
    for (const FunctionFreeAtom& a : t.rule.head[d])
      out.heads[d].push_back(detail::apply_substitution(a, head_subs));
  }
  return out;
}

std::vector<GroundTerm> fresh_terms(const Trigger& t, std::size_t d) {
  if (d >= t.rule.head.size())
    throw std::out_of_range("disjunct index out of range: " + std::to_string(d));
  const std::vector<std::string> front = frontier(t.rule);
  std::vector<GroundTerm> front_images;
  front_images.reserve(front.size());
  for (const std::string& v : front) {
    auto it = t.subs.find(v);
    if (it == t.subs.end()) throw UnmappedVariable(v);
    front_images.push_back(it->second);
  }
  std::vector<GroundTerm> out;
  for (const std::string& v : existential_variables(t.rule, d)) {
    SkolemFS sym{t.rule.id, static_cast<std::uint32_t>(d), v,
                 static_cast<std::uint32_t>(front_images.size())};
    out.push_back(GroundTerm::function(std::move(sym), front_images));
  }
  return out;
}

bool is_loaded(const Trigger& t, const FactSet& F) {
  for (const FunctionFreeAtom& a : t.rule.body)
    if (!F.count(detail::apply_substitution(a, t.subs))) return false;
  return true;
}

namespace {

// Restricted check for one disjunct: is the disjunct satisfiable in F with the
// frontier fixed and existential variables ranging over terms of F?
bool disjunct_satisfiable(const Trigger& t, std::size_t d, const FactSet& F) {
  GroundSubstitution fixed;
  std::set<std::string> body_vars;
  for (const std::string& v : body_variables(t.rule)) body_vars.insert(v);
  for (const FunctionFreeAtom& a : t.rule.head[d])
    for (const VarOrConst& term : a.terms)
      if (term.is_var() && body_vars.count(term.name)) {
        auto it = t.subs.find(term.name);
        if (it == t.subs.end()) throw UnmappedVariable(term.name);
        fixed.emplace(term.name, it->second);
      }
  bool found = false;
  detail::match_atoms(t.rule.head[d], F, std::move(fixed),
                      [&](const GroundSubstitution&) {
                        found = true;
                        return true;
                      });
  return found;
}

}  // namespace

bool is_obsolete(ObsolescenceKind kind, const Trigger& t, const FactSet& F) {
  if (kind == ObsolescenceKind::Skolem) {
    const TriggerInstance inst = instantiate(t);
    for (const std::vector<Fact>& head : inst.heads) {
      bool contained = true;
      for (const Fact& f : head)
        if (!F.count(f)) {
          contained = false;
          break;
        }
      if (contained) return true;
    }
    return false;
  }
  for (std::size_t d = 0; d < t.rule.head.size(); ++d)
    if (disjunct_satisfiable(t, d, F)) return true;
  return false;
}

bool is_active(ObsolescenceKind kind, const Trigger& t, const FactSet& F) {
  return is_loaded(t, F) && !is_obsolete(kind, t, F);
}

bool trigger_equiv(const Trigger& a, const Trigger& b) {
  if (a.rule.id != b.rule.id) return false;
  for (const std::string& v : body_variables(a.rule)) {
    auto ia = a.subs.find(v);
    auto ib = b.subs.find(v);
    if (ia == a.subs.end() || ib == b.subs.end()) return false;
    if (!(ia->second == ib->second)) return false;
  }
  return true;
}

std::vector<Trigger> enumerate_triggers(const RuleSet& rs, const FactSet& F) {
  std::vector<Trigger> out;
  for (const Rule& r : rs.rules) {
    detail::match_atoms(r.body, F, {}, [&](const GroundSubstitution& binding) {
      out.push_back(Trigger{r, binding});
      return false;
    });
  }
  std::sort(out.begin(), out.end(), trigger_less);
  return out;
}

}  // namespace chase
