#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "chase/trigger.hpp"

namespace chase {

enum class BranchStatus { Saturated, BudgetExhausted };

// Picks the head disjunct to follow in branch mode. Indices are reduced modulo
// the applied rule's disjunct count; an exhausted script falls back to 0.
struct DisjunctSelector {
  enum class Mode { Fixed, RoundRobin, Scripted };
  Mode mode = Mode::Fixed;
  std::size_t fixed_index = 0;
  std::vector<std::size_t> script;

  static DisjunctSelector fixed(std::size_t d) { return {Mode::Fixed, d, {}}; }
  static DisjunctSelector round_robin() { return {Mode::RoundRobin, 0, {}}; }
  static DisjunctSelector scripted(std::vector<std::size_t> s) {
    return {Mode::Scripted, 0, std::move(s)};
  }

  // `step` is the number of applications performed so far.
  std::size_t pick(std::size_t step, std::size_t disjunct_count) const;
};

struct ChaseConfig {
  ObsolescenceKind kind = ObsolescenceKind::Restricted;
  // Branch mode: maximum number of trigger applications. Tree mode: maximum
  // number of tree nodes. Must be positive.
  std::size_t max_steps = 1000;
  DisjunctSelector selector;
};

struct ChaseNode {
  FactSet facts;
  // The trigger and disjunct whose application produced this node; absent for
  // the root (database) node.
  std::optional<std::pair<Trigger, std::size_t>> origin;
};

struct ChaseBranch {
  std::vector<ChaseNode> nodes;  // root first; facts grow strictly
  BranchStatus status = BranchStatus::Saturated;
};

// The facts of the final node (the union of the whole branch).
const FactSet& result_of(const ChaseBranch& b);

// Runs one chase branch: FIFO queue of discovered triggers, re-checking
// activeness at pop time, applying the selected disjunct, then enqueueing newly
// discovered triggers. Saturated when no queued or discoverable trigger is
// active; BudgetExhausted when an active trigger remains after max_steps
// applications. Pre: validate_ruleset ok; db function-free; max_steps > 0.
ChaseBranch run_branch(const KnowledgeBase& kb, const ChaseConfig& cfg);

struct ChaseTreeNode {
  ChaseNode node;
  std::vector<ChaseTreeNode> children;          // empty iff leaf
  std::optional<BranchStatus> leaf_status;      // set iff leaf
};

struct ChaseTree {
  ChaseTreeNode root;
};

// Breadth-first tree chase: at each node the earliest active trigger in FIFO
// discovery order is applied, producing one child per head disjunct. A node
// with no active trigger is a Saturated leaf; a node whose expansion would
// exceed the node budget becomes a BudgetExhausted leaf.
ChaseTree run_tree(const KnowledgeBase& kb, const ChaseConfig& cfg);

struct TreeResult {
  FactSet facts;
  BranchStatus status = BranchStatus::Saturated;
};

// Leaf fact sets with statuses, deduplicated, in canonical fact-set order.
std::vector<TreeResult> tree_results(const ChaseTree& tree);

// First-order model check: kb.db is contained in F and for every body match of
// every rule some head disjunct is satisfiable in F (existential variables
// ranging over terms of F).
bool models_kb(const FactSet& F, const KnowledgeBase& kb);

struct NotAModelError : std::runtime_error {
  NotAModelError() : std::runtime_error("candidate set is not a model of the knowledge base") {}
};

struct UniversalityResult {
  FactSet result;        // the chase result that maps into M
  GroundTermMapping hom;
};

// Picks the first chase result (canonical order) admitting a homomorphism into
// M. Throws NotAModelError if M is not a model of kb.
std::optional<UniversalityResult> check_universality(const std::vector<FactSet>& results,
                                                     const FactSet& M,
                                                     const KnowledgeBase& kb);

}  // namespace chase
