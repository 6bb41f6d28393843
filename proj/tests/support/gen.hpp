#pragma once

// Seeded random generators for property-style tests. Everything is driven by a
// single mt19937_64 so each test is reproducible from its seed.

#include <random>
#include <string>
#include <vector>

#include "chase/rules.hpp"
#include "chase/trigger.hpp"

namespace gen {

struct Rng {
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  std::mt19937_64 eng;

  std::size_t below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng);
  }
  std::size_t between(std::size_t lo, std::size_t hi) {  // inclusive bounds
    return std::uniform_int_distribution<std::size_t>(lo, hi)(eng);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng); }

  template <typename T>
  const T& pick(const std::vector<T>& pool) {
    return pool[below(pool.size())];
  }
};

using chase::Fact;
using chase::FactSet;
using chase::FunctionFreeAtom;
using chase::GroundTerm;
using chase::Rule;
using chase::RuleSet;
using chase::SkolemFS;
using chase::VarOrConst;

struct PredicatePool {
  std::vector<std::pair<std::string, std::size_t>> preds;
};

inline PredicatePool default_preds() {
  return {{{"P", 2}, {"Q", 1}, {"R", 2}, {"S", 1}}};
}

// A ground term over the constant pool and Skolem symbol pool, depth-bounded.
inline GroundTerm random_term(Rng& rng, const std::vector<std::string>& constants,
                              const std::vector<SkolemFS>& symbols, std::size_t max_depth) {
  if (max_depth == 0 || symbols.empty() || rng.coin(0.6))
    return GroundTerm::constant(rng.pick(constants));
  const SkolemFS& sym = rng.pick(symbols);
  std::vector<GroundTerm> args;
  for (std::size_t i = 0; i < sym.arity; ++i)
    args.push_back(random_term(rng, constants, symbols, max_depth - 1));
  return GroundTerm::function(sym, std::move(args));
}

// A pool of at most `max_terms` distinct ground terms (constants first).
inline std::vector<GroundTerm> random_term_pool(Rng& rng, std::size_t max_terms) {
  const std::vector<std::string> constants = {"a", "b", "c"};
  const std::vector<SkolemFS> symbols = {
      SkolemFS{1, 0, "z", 1}, SkolemFS{1, 1, "z", 1}, SkolemFS{2, 0, "w", 2}};
  std::set<GroundTerm> pool;
  const std::size_t want = rng.between(1, max_terms);
  std::size_t guard = 0;
  while (pool.size() < want && guard++ < 50)
    pool.insert(random_term(rng, constants, symbols, 2));
  return {pool.begin(), pool.end()};
}

inline FactSet random_fact_set(Rng& rng, const std::vector<GroundTerm>& terms,
                               const PredicatePool& preds, std::size_t max_facts) {
  FactSet out;
  const std::size_t want = rng.between(1, max_facts);
  for (std::size_t i = 0; i < want; ++i) {
    const auto& [pred, arity] = preds.preds[rng.below(preds.preds.size())];
    Fact f;
    f.predicate = pred;
    for (std::size_t k = 0; k < arity; ++k) f.terms.push_back(rng.pick(terms));
    out.insert(std::move(f));
  }
  return out;
}

struct RuleOptions {
  std::size_t max_body_atoms = 2;
  std::size_t max_disjuncts = 1;  // 1 = deterministic
  std::size_t max_head_atoms = 2;
  double existential_prob = 0.4;
  double body_constant_prob = 0.15;
};

inline Rule random_rule(Rng& rng, std::uint32_t id, const PredicatePool& preds,
                        const RuleOptions& opt) {
  const std::vector<std::string> body_vars = {"x", "y", "z"};
  const std::vector<std::string> exist_vars = {"u", "v"};
  const std::vector<std::string> constants = {"c0", "c1"};

  Rule rule;
  rule.id = id;
  const std::size_t body_atoms = rng.between(1, opt.max_body_atoms);
  for (std::size_t i = 0; i < body_atoms; ++i) {
    const auto& [pred, arity] = preds.preds[rng.below(preds.preds.size())];
    FunctionFreeAtom atom;
    atom.predicate = pred;
    for (std::size_t k = 0; k < arity; ++k) {
      if (rng.coin(opt.body_constant_prob))
        atom.terms.push_back(VarOrConst::cst(rng.pick(constants)));
      else
        atom.terms.push_back(VarOrConst::var(rng.pick(body_vars)));
    }
    rule.body.push_back(std::move(atom));
  }

  // Head atoms draw from variables that actually occur in the body (plus
  // existentials/constants) so the rule is safe by construction.
  std::vector<std::string> usable = chase::body_variables(rule);
  const std::size_t disjuncts = rng.between(1, opt.max_disjuncts);
  for (std::size_t d = 0; d < disjuncts; ++d) {
    std::vector<FunctionFreeAtom> disjunct;
    const std::size_t head_atoms = rng.between(1, opt.max_head_atoms);
    for (std::size_t i = 0; i < head_atoms; ++i) {
      const auto& [pred, arity] = preds.preds[rng.below(preds.preds.size())];
      FunctionFreeAtom atom;
      atom.predicate = pred;
      for (std::size_t k = 0; k < arity; ++k) {
        if (!usable.empty() && !rng.coin(opt.existential_prob))
          atom.terms.push_back(VarOrConst::var(rng.pick(usable)));
        else if (rng.coin(0.8))
          atom.terms.push_back(VarOrConst::var(rng.pick(exist_vars)));
        else
          atom.terms.push_back(VarOrConst::cst(rng.pick(constants)));
      }
      disjunct.push_back(std::move(atom));
    }
    rule.head.push_back(std::move(disjunct));
  }
  return rule;
}

inline RuleSet random_rule_set(Rng& rng, std::size_t max_rules, const PredicatePool& preds,
                               const RuleOptions& opt) {
  RuleSet rs;
  const std::size_t count = rng.between(1, max_rules);
  for (std::size_t i = 0; i < count; ++i)
    rs.rules.push_back(random_rule(rng, static_cast<std::uint32_t>(i + 1), preds, opt));
  return rs;
}

// A function-free database over a handful of constants.
inline FactSet random_database(Rng& rng, const PredicatePool& preds, std::size_t max_facts,
                               std::size_t max_constants = 4) {
  const std::vector<std::string> all = {"a", "b", "c", "d"};
  std::vector<GroundTerm> constants;
  for (std::size_t i = 0; i < std::min(max_constants, all.size()); ++i)
    constants.push_back(GroundTerm::constant(all[i]));
  return random_fact_set(rng, constants, preds, max_facts);
}

// A trigger for a random rule: body variables mapped to random ground terms
// built over shared constants and the rule's own Skolem symbols (so
// result-containment scenarios arise naturally).
inline chase::Trigger random_trigger(Rng& rng, const Rule& rule) {
  std::vector<SkolemFS> symbols;
  const std::size_t front = chase::frontier(rule).size();
  for (std::size_t d = 0; d < rule.head.size(); ++d)
    for (const std::string& v : chase::existential_variables(rule, d))
      symbols.push_back(SkolemFS{rule.id, static_cast<std::uint32_t>(d), v,
                                 static_cast<std::uint32_t>(front)});
  const std::vector<std::string> constants = {"a", "b", "c0", "c1"};
  chase::Trigger t;
  t.rule = rule;
  for (const std::string& v : chase::body_variables(rule))
    t.subs.emplace(v, random_term(rng, constants, symbols, 2));
  return t;
}

}  // namespace gen
