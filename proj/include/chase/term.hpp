#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace chase {

// The reserved constant used by critical instances. Rendered "*"; input files
// for rules and databases reject it.
inline const std::string critical_constant = "*";

// Identity of a Skolem function symbol: one symbol per existential variable of
// one head disjunct of one rule. Arity is the length of the rule's frontier.
struct SkolemFS {
  std::uint32_t rule_id = 0;
  std::uint32_t disjunct_index = 0;  // zero-based
  std::string var;
  std::uint32_t arity = 0;

  auto operator<=>(const SkolemFS&) const = default;
};

// An immutable ground term: either a constant or a Skolem function applied to
// ground arguments. Copies are cheap (shared node); depth and the canonical
// rendering are computed once at construction.
//
// Canonical rendering: constants print as their name, function terms print as
//   f[<rule_id>,<disjunct_index>,<var>](<arg1>,...,<argN>)
// The rendering is injective, so equality is text equality. Ordering is
// (depth, text), which puts constants first and shallower terms before deeper
// ones; this is the tie-break order used by all deterministic searches.
class GroundTerm {
 public:
  static GroundTerm constant(std::string name);
  static GroundTerm function(SkolemFS sym, std::vector<GroundTerm> args);

  bool is_constant() const { return !node_->sym.has_value(); }
  // Pre: is_constant().
  const std::string& constant_name() const { return node_->name; }
  // Pre: !is_constant().
  const SkolemFS& symbol() const { return *node_->sym; }
  const std::vector<GroundTerm>& args() const { return node_->args; }

  int depth() const { return node_->depth; }
  const std::string& text() const { return node_->text; }

  bool operator==(const GroundTerm& other) const {
    return node_ == other.node_ || node_->text == other.node_->text;
  }
  bool operator<(const GroundTerm& other) const {
    if (node_ == other.node_) return false;
    if (node_->depth != other.node_->depth) return node_->depth < other.node_->depth;
    return node_->text < other.node_->text;
  }

 private:
  struct Node {
    std::optional<SkolemFS> sym;  // nullopt => constant
    std::string name;             // constant name (empty for function terms)
    std::vector<GroundTerm> args;
    int depth = 0;
    std::string text;
  };
  explicit GroundTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// depth(constant) = 0, depth(f(args)) = 1 + max arg depth (1 for no args).
inline int depth(const GroundTerm& t) { return t.depth(); }

// True iff some root-to-leaf path contains the same Skolem symbol twice.
bool is_cyclic(const GroundTerm& t);

// Names of all constants occurring in t (at any depth).
std::set<std::string> constants_of(const GroundTerm& t);

}  // namespace chase
