#include "chase/term.hpp"

#include <algorithm>
#include <stdexcept>

namespace chase {

GroundTerm GroundTerm::constant(std::string name) {
  if (name.empty()) throw std::invalid_argument("constant name must be non-empty");
  // Delimiters would break the injectivity of the canonical rendering.
  if (name.find_first_of("(),[] ") != std::string::npos)
    throw std::invalid_argument("constant name contains a delimiter: " + name);
  auto node = std::make_shared<Node>();
  node->name = std::move(name);
  node->depth = 0;
  node->text = node->name;
  return GroundTerm(std::move(node));
}

GroundTerm GroundTerm::function(SkolemFS sym, std::vector<GroundTerm> args) {
  if (args.size() != sym.arity)
    throw std::invalid_argument("Skolem symbol arity mismatch for var " + sym.var);
  auto node = std::make_shared<Node>();
  node->depth = 1;
  for (const GroundTerm& a : args) node->depth = std::max(node->depth, 1 + a.depth());
  std::string text = "f[" + std::to_string(sym.rule_id) + "," +
                     std::to_string(sym.disjunct_index) + "," + sym.var + "](";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) text += ",";
    text += args[i].text();
  }
  text += ")";
  node->sym = std::move(sym);
  node->args = std::move(args);
  node->text = std::move(text);
  return GroundTerm(std::move(node));
}

namespace {

bool cyclic_walk(const GroundTerm& t, std::vector<const SkolemFS*>& path) {
  if (t.is_constant()) return false;
  const SkolemFS& sym = t.symbol();
  for (const SkolemFS* seen : path)
    if (*seen == sym) return true;
  path.push_back(&sym);
  for (const GroundTerm& a : t.args())
    if (cyclic_walk(a, path)) return true;
  path.pop_back();
  return false;
}

void collect_constants(const GroundTerm& t, std::set<std::string>& out) {
  if (t.is_constant()) {
    out.insert(t.constant_name());
    return;
  }
  for (const GroundTerm& a : t.args()) collect_constants(a, out);
}

}  // namespace

bool is_cyclic(const GroundTerm& t) {
  std::vector<const SkolemFS*> path;
  return cyclic_walk(t, path);
}

std::set<std::string> constants_of(const GroundTerm& t) {
  std::set<std::string> out;
  collect_constants(t, out);
  return out;
}

}  // namespace chase
