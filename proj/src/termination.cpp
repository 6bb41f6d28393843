#include "chase/termination.hpp"

#include <algorithm>
#include <functional>

namespace chase {

FactSet critical_instance(const RuleSet& rs) {
  const Signature sig = signature_of(rs);
  std::vector<GroundTerm> pool;
  for (const std::string& c : sig.constants) pool.push_back(GroundTerm::constant(c));
  pool.push_back(GroundTerm::constant(critical_constant));
  std::sort(pool.begin(), pool.end());

  FactSet out;
  for (const auto& [pred, arity] : sig.predicates) {
    Fact fact;
    fact.predicate = pred;
    fact.terms.assign(arity, pool.front());
    std::function<void(std::size_t)> fill = [&](std::size_t pos) {
      if (pos == arity) {
        out.insert(fact);
        return;
      }
      for (const GroundTerm& t : pool) {
        fact.terms[pos] = t;
        fill(pos + 1);
      }
    };
    fill(0);
  }
  return out;
}

namespace {

GroundTerm rename_term(const GroundTerm& t, FreshConstants& ctx) {
  if (t.is_constant())
    return t.constant_name() == critical_constant ? ctx.fresh() : t;
  std::vector<GroundTerm> args;
  args.reserve(t.args().size());
  for (const GroundTerm& a : t.args()) args.push_back(rename_term(a, ctx));
  return GroundTerm::function(t.symbol(), std::move(args));
}

void collect_skolem_terms(const GroundTerm& t, std::set<GroundTerm>& out) {
  if (t.is_constant()) return;
  out.insert(t);
  for (const GroundTerm& a : t.args()) collect_skolem_terms(a, out);
}

void collect_cyclic_terms(const GroundTerm& t, std::set<GroundTerm>& out) {
  if (t.is_constant()) return;
  if (is_cyclic(t)) out.insert(t);
  for (const GroundTerm& a : t.args()) collect_cyclic_terms(a, out);
}

}  // namespace

Trigger rename_apart(const Trigger& t, FreshConstants& ctx) {
  Trigger renamed;
  renamed.rule = t.rule;
  for (const std::string& v : body_variables(t.rule)) {
    auto it = t.subs.find(v);
    if (it == t.subs.end()) throw UnmappedVariable(v);
    renamed.subs.emplace(v, rename_term(it->second, ctx));
  }
  return renamed;
}

FactSet backtrack_facts(const Trigger& t, const RuleSet& rs, FreshConstants& ctx) {
  FactSet out;
  for (const Fact& f : instantiate(t).body) out.insert(f);

  // One producer substitution per (rule, frontier images): sibling Skolem
  // terms of one application share their body's fresh constants.
  std::map<std::string, GroundSubstitution> producer_subs;
  std::set<GroundTerm> processed;

  auto producer_for = [&](const SkolemFS& sym, const std::vector<GroundTerm>& args,
                          const Rule& rule) -> const GroundSubstitution& {
    std::string key = std::to_string(sym.rule_id);
    for (const GroundTerm& a : args) key += "|" + a.text();
    auto it = producer_subs.find(key);
    if (it != producer_subs.end()) return it->second;

    const std::vector<std::string> front = frontier(rule);
    if (front.size() != args.size())
      throw std::invalid_argument("Skolem symbol arity does not match rule " +
                                  std::to_string(sym.rule_id));
    GroundSubstitution subs;
    for (std::size_t i = 0; i < front.size(); ++i) subs.emplace(front[i], args[i]);
    for (const std::string& v : body_variables(rule))
      if (!subs.count(v)) subs.emplace(v, ctx.fresh());
    return producer_subs.emplace(std::move(key), std::move(subs)).first->second;
  };

  while (true) {
    std::set<GroundTerm> skolem_terms;
    for (const Fact& f : out)
      for (const GroundTerm& term : f.terms) collect_skolem_terms(term, skolem_terms);

    const GroundTerm* next = nullptr;
    for (const GroundTerm& term : skolem_terms)
      if (!processed.count(term)) {
        next = &term;
        break;
      }
    if (!next) break;
    processed.insert(*next);

    const SkolemFS& sym = next->symbol();
    const Rule* rule = nullptr;
    for (const Rule& r : rs.rules)
      if (r.id == sym.rule_id) {
        rule = &r;
        break;
      }
    if (!rule) throw UnknownRuleId(sym.rule_id);
    if (sym.disjunct_index >= rule->head.size())
      throw std::invalid_argument("Skolem symbol references missing disjunct of rule " +
                                  std::to_string(sym.rule_id));

    const Trigger producer{*rule, producer_for(sym, next->args(), *rule)};
    const TriggerInstance inst = instantiate(producer);
    for (const Fact& f : inst.body) out.insert(f);
    for (const Fact& f : inst.heads[sym.disjunct_index]) out.insert(f);
  }
  return out;
}

bool moc_is_obsolete(MfaNotion notion, const Trigger& t, const FactSet& F,
                     const RuleSet& rs) {
  if (notion == MfaNotion::Mfa) {
    // Determinized Skolem obsolescence: every disjunct's result already present.
    const TriggerInstance inst = instantiate(t);
    for (const std::vector<Fact>& head : inst.heads)
      for (const Fact& f : head)
        if (!F.count(f)) return false;
    return true;
  }
  FreshConstants ctx;
  const Trigger renamed = rename_apart(t, ctx);
  const FactSet backtracked = backtrack_facts(renamed, rs, ctx);
  const ObsolescenceKind kind = notion == MfaNotion::Dmfa ? ObsolescenceKind::Skolem
                                                          : ObsolescenceKind::Restricted;
  return is_obsolete(kind, renamed, backtracked);
}

namespace {

// A trigger's heads depend only on its rule and frontier images, so one firing
// per (rule, frontier assignment) suffices in the parallel determinized chase.
std::string frontier_key(const Trigger& t) {
  std::string key = std::to_string(t.rule.id);
  for (const std::string& v : frontier(t.rule)) key += "|" + t.subs.at(v).text();
  return key;
}

}  // namespace

MfaOutcome compute_mfa_set(const RuleSet& rs, MfaNotion notion,
                           std::optional<std::size_t> budget) {
  MfaOutcome outcome;
  FactSet facts = critical_instance(rs);
  std::set<std::string> applied;
  std::size_t rounds = 0;

  while (true) {
    std::vector<Trigger> to_fire;
    for (Trigger& t : enumerate_triggers(rs, facts)) {
      if (applied.count(frontier_key(t))) continue;
      if (moc_is_obsolete(notion, t, facts, rs)) continue;
      to_fire.push_back(std::move(t));
    }
    if (to_fire.empty()) {
      outcome.kind = MfaOutcome::Kind::AcyclicFixpoint;
      outcome.mfa_set = std::move(facts);
      outcome.rounds = rounds;
      return outcome;
    }
    if (budget && rounds == *budget) {
      outcome.kind = MfaOutcome::Kind::BudgetExhausted;
      outcome.rounds = rounds;
      return outcome;
    }

    std::vector<Fact> fresh_facts;
    for (const Trigger& t : to_fire) {
      applied.insert(frontier_key(t));
      const TriggerInstance inst = instantiate(t);
      for (const std::vector<Fact>& head : inst.heads)
        for (const Fact& f : head)
          if (facts.insert(f).second) fresh_facts.push_back(f);
    }
    ++rounds;

    std::set<GroundTerm> cyclic;
    for (const Fact& f : fresh_facts)
      for (const GroundTerm& term : f.terms) collect_cyclic_terms(term, cyclic);
    if (!cyclic.empty()) {
      outcome.kind = MfaOutcome::Kind::CyclicTermFound;
      outcome.witness = *cyclic.begin();
      outcome.rounds = rounds;
      return outcome;
    }
  }
}

std::size_t intrinsic_round_budget(const RuleSet& rs) {
  constexpr std::size_t cap = std::size_t{1} << 60;
  auto sat_mul = [&](std::size_t a, std::size_t b) {
    if (a != 0 && b > cap / a) return cap;
    return std::min(cap, a * b);
  };
  auto sat_add = [&](std::size_t a, std::size_t b) {
    return (a > cap - b) ? cap : a + b;
  };
  auto sat_pow = [&](std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) r = sat_mul(r, base);
    return r;
  };

  const Signature sig = signature_of(rs);
  const std::size_t base_constants = sig.constants.size() + 1;  // + "*"
  std::size_t symbols = 0;
  std::size_t max_frontier = 1;
  for (const Rule& r : rs.rules) {
    max_frontier = std::max(max_frontier, frontier(r).size());
    for (std::size_t d = 0; d < r.head.size(); ++d)
      symbols += existential_variables(r, d).size();
  }

  // Non-cyclic terms have depth <= number of Skolem symbols; count terms level
  // by level (root symbol choice times argument combinations, overcounting).
  std::size_t terms = base_constants;
  for (std::size_t level = 0; level < symbols; ++level)
    terms = sat_add(base_constants, sat_mul(symbols, sat_pow(terms, max_frontier)));

  std::size_t fact_bound = 0;
  for (const auto& [pred, arity] : sig.predicates)
    fact_bound = sat_add(fact_bound, sat_pow(terms, arity));
  // Every round before the halt adds at least one fact over non-cyclic terms.
  return sat_add(fact_bound, 1);
}

TerminationVerdict analyze_termination(const RuleSet& rs, MfaNotion notion) {
  const MfaOutcome outcome = compute_mfa_set(rs, notion, intrinsic_round_budget(rs));
  TerminationVerdict verdict;
  verdict.rounds = outcome.rounds;
  switch (outcome.kind) {
    case MfaOutcome::Kind::AcyclicFixpoint:
      verdict.acyclic = true;
      verdict.mfa_set_size = outcome.mfa_set.size();
      break;
    case MfaOutcome::Kind::CyclicTermFound:
      verdict.acyclic = false;
      verdict.witness = outcome.witness;
      break;
    case MfaOutcome::Kind::BudgetExhausted:
      throw std::logic_error("parallel determinized chase exhausted its intrinsic budget");
  }
  return verdict;
}

}  // namespace chase
