#include "chase/engine.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace chase {

std::size_t DisjunctSelector::pick(std::size_t step, std::size_t disjunct_count) const {
  std::size_t raw = 0;
  switch (mode) {
    case Mode::Fixed: raw = fixed_index; break;
    case Mode::RoundRobin: raw = step; break;
    case Mode::Scripted: raw = step < script.size() ? script[step] : 0; break;
  }
  return disjunct_count == 0 ? 0 : raw % disjunct_count;
}

const FactSet& result_of(const ChaseBranch& b) { return b.nodes.back().facts; }

namespace {

// A trigger's identity for discovery bookkeeping: rule id + full body-variable
// assignment, rendered canonically.
std::string trigger_key(const Trigger& t) {
  std::string key = std::to_string(t.rule.id);
  for (const auto& [var, term] : t.subs) key += "|" + var + "=" + term.text();
  return key;
}

void check_config(const KnowledgeBase& kb, const ChaseConfig& cfg) {
  if (cfg.max_steps == 0) throw std::invalid_argument("max_steps must be positive");
  ValidationReport report = validate_ruleset(kb.rules);
  if (!report.ok()) throw std::invalid_argument("rule set fails validation: " +
                                                report.violations.front().detail);
}

// Shared FIFO discovery state: the queue survives into child nodes in tree
// mode, so discovery order is inherited along each path.
struct Frontier {
  std::deque<Trigger> queue;
  std::set<std::string> seen;

  void discover(const RuleSet& rs, const FactSet& facts) {
    for (Trigger& t : enumerate_triggers(rs, facts)) {
      if (seen.insert(trigger_key(t)).second) queue.push_back(std::move(t));
    }
  }

  // Pops until an active trigger surfaces; inactive triggers are dropped for
  // good (loadedness and obsolescence are both monotone in the fact set).
  std::optional<Trigger> next_active(ObsolescenceKind kind, const FactSet& facts) {
    while (!queue.empty()) {
      Trigger t = std::move(queue.front());
      queue.pop_front();
      if (is_active(kind, t, facts)) return t;
    }
    return std::nullopt;
  }
};

FactSet with_facts(FactSet base, const std::vector<Fact>& added) {
  for (const Fact& f : added) base.insert(f);
  return base;
}

}  // namespace

ChaseBranch run_branch(const KnowledgeBase& kb, const ChaseConfig& cfg) {
  check_config(kb, cfg);
  ChaseBranch branch;
  branch.nodes.push_back(ChaseNode{kb.db, std::nullopt});

  Frontier frontier;
  frontier.discover(kb.rules, kb.db);

  std::size_t applications = 0;
  while (true) {
    const FactSet& facts = branch.nodes.back().facts;
    std::optional<Trigger> trigger = frontier.next_active(cfg.kind, facts);
    if (!trigger) {
      branch.status = BranchStatus::Saturated;
      break;
    }
    if (applications == cfg.max_steps) {
      branch.status = BranchStatus::BudgetExhausted;
      break;
    }
    const std::size_t d = cfg.selector.pick(applications, trigger->rule.head.size());
    const TriggerInstance inst = instantiate(*trigger);
    FactSet next = with_facts(facts, inst.heads[d]);
    branch.nodes.push_back(ChaseNode{std::move(next), std::make_pair(*trigger, d)});
    ++applications;
    frontier.discover(kb.rules, branch.nodes.back().facts);
  }
  return branch;
}

ChaseTree run_tree(const KnowledgeBase& kb, const ChaseConfig& cfg) {
  check_config(kb, cfg);

  struct Pending {
    ChaseTreeNode* node;
    Frontier frontier;
  };

  ChaseTree tree;
  tree.root.node = ChaseNode{kb.db, std::nullopt};

  Frontier root_frontier;
  root_frontier.discover(kb.rules, kb.db);

  std::deque<Pending> work;
  work.push_back(Pending{&tree.root, std::move(root_frontier)});
  std::size_t node_count = 1;

  while (!work.empty()) {
    Pending item = std::move(work.front());
    work.pop_front();
    ChaseTreeNode& current = *item.node;

    std::optional<Trigger> trigger =
        item.frontier.next_active(cfg.kind, current.node.facts);
    if (!trigger) {
      current.leaf_status = BranchStatus::Saturated;
      continue;
    }
    const std::size_t disjuncts = trigger->rule.head.size();
    if (node_count + disjuncts > cfg.max_steps) {
      current.leaf_status = BranchStatus::BudgetExhausted;
      continue;
    }

    const TriggerInstance inst = instantiate(*trigger);
    node_count += disjuncts;
    current.children.reserve(disjuncts);
    for (std::size_t d = 0; d < disjuncts; ++d) {
      ChaseTreeNode child;
      child.node.facts = with_facts(current.node.facts, inst.heads[d]);
      child.node.origin = std::make_pair(*trigger, d);
      current.children.push_back(std::move(child));
    }
    // Children reuse the parent's remaining queue and then discover their own
    // triggers; BFS order keeps expansion deterministic.
    for (ChaseTreeNode& child : current.children) {
      Frontier child_frontier = item.frontier;
      child_frontier.discover(kb.rules, child.node.facts);
      work.push_back(Pending{&child, std::move(child_frontier)});
    }
  }
  return tree;
}

namespace {

void collect_leaves(const ChaseTreeNode& node, std::vector<TreeResult>& out) {
  if (node.children.empty()) {
    out.push_back(TreeResult{node.node.facts,
                             node.leaf_status.value_or(BranchStatus::Saturated)});
    return;
  }
  for (const ChaseTreeNode& child : node.children) collect_leaves(child, out);
}

bool result_less(const TreeResult& a, const TreeResult& b) {
  return std::lexicographical_compare(a.facts.begin(), a.facts.end(),
                                      b.facts.begin(), b.facts.end());
}

bool result_eq(const TreeResult& a, const TreeResult& b) {
  return a.facts == b.facts && a.status == b.status;
}

}  // namespace

std::vector<TreeResult> tree_results(const ChaseTree& tree) {
  std::vector<TreeResult> out;
  collect_leaves(tree.root, out);
  std::sort(out.begin(), out.end(), [](const TreeResult& a, const TreeResult& b) {
    if (a.facts != b.facts) return result_less(a, b);
    return a.status < b.status;
  });
  out.erase(std::unique(out.begin(), out.end(), result_eq), out.end());
  return out;
}

bool models_kb(const FactSet& F, const KnowledgeBase& kb) {
  for (const Fact& f : kb.db)
    if (!F.count(f)) return false;
  for (const Trigger& t : enumerate_triggers(kb.rules, F))
    if (!is_obsolete(ObsolescenceKind::Restricted, t, F)) return false;
  return true;
}

std::optional<UniversalityResult> check_universality(const std::vector<FactSet>& results,
                                                     const FactSet& M,
                                                     const KnowledgeBase& kb) {
  if (!models_kb(M, kb)) throw NotAModelError();
  std::vector<FactSet> ordered = results;
  std::sort(ordered.begin(), ordered.end(), [](const FactSet& a, const FactSet& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());
  for (const FactSet& U : ordered) {
    if (std::optional<GroundTermMapping> h = find_homomorphism(U, M))
      return UniversalityResult{U, std::move(*h)};
  }
  return std::nullopt;
}

}  // namespace chase
