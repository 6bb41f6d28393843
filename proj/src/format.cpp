#include "chase/format.hpp"

#include <algorithm>
#include <cctype>

namespace chase {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string lowercased(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Cursor over the input with line/column tracking; '%' comments run to the end
// of a line.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++pos_;
        ++line_;
        line_start_ = pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  // Skips blanks and comments within the current line only.
  void skip_inline_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c != '\n' && std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_end() const { return pos_ >= text_.size(); }
  bool at_line_end() const { return at_end() || text_[pos_] == '\n'; }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool peek_is(char c) const { return peek() == c; }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const std::string& what) {
    if (!consume(c)) fail("expected '" + std::string(1, c) + "' " + what);
  }

  std::string ident() {
    if (!is_ident_start(peek())) fail("expected an identifier");
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::uint64_t natural() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > 0xffffffffULL) fail("number out of range");
      ++pos_;
    }
    return value;
  }

  std::size_t line() const { return line_; }
  std::size_t col() const { return pos_ - line_start_ + 1; }

  [[noreturn]] void fail(const std::string& message,
                         ParseError::Code code = ParseError::Code::Syntax) const {
    throw ParseError(code, line_, col(), message);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
};

VarOrConst parse_rule_term(Scanner& in) {
  in.skip_inline_space();
  if (in.peek_is('*'))
    in.fail("the constant '*' is reserved", ParseError::Code::ReservedConstant);
  std::string name = in.ident();
  if (std::isupper(static_cast<unsigned char>(name[0])))
    return VarOrConst::var(lowercased(std::move(name)));
  return VarOrConst::cst(std::move(name));
}

FunctionFreeAtom parse_rule_atom(Scanner& in) {
  in.skip_inline_space();
  FunctionFreeAtom atom;
  atom.predicate = in.ident();
  in.skip_inline_space();
  in.expect('(', "after predicate name");
  atom.terms.push_back(parse_rule_term(in));
  in.skip_inline_space();
  while (in.consume(',')) {
    atom.terms.push_back(parse_rule_term(in));
    in.skip_inline_space();
  }
  in.expect(')', "after atom arguments");
  return atom;
}

// True when the cursor sits on "->" (end of the rule body).
bool at_arrow(Scanner& in) {
  in.skip_inline_space();
  return in.peek_is('-');
}

GroundTerm parse_ground_term(Scanner& in, FactFileKind kind) {
  in.skip_inline_space();
  if (in.consume('*')) {
    if (kind == FactFileKind::Database)
      in.fail("the constant '*' is reserved", ParseError::Code::ReservedConstant);
    return GroundTerm::constant(critical_constant);
  }
  std::string name = in.ident();
  if (name == "f" && in.peek_is('[')) {
    if (kind == FactFileKind::Database)
      in.fail("Skolem terms are not allowed in a database file",
              ParseError::Code::SkolemInDatabase);
    in.expect('[', "");
    SkolemFS sym;
    sym.rule_id = static_cast<std::uint32_t>(in.natural());
    in.expect(',', "in Skolem symbol");
    sym.disjunct_index = static_cast<std::uint32_t>(in.natural());
    in.expect(',', "in Skolem symbol");
    sym.var = in.ident();
    in.expect(']', "after Skolem symbol");
    in.expect('(', "before Skolem arguments");
    std::vector<GroundTerm> args;
    in.skip_inline_space();
    if (!in.peek_is(')')) {
      args.push_back(parse_ground_term(in, kind));
      in.skip_inline_space();
      while (in.consume(',')) {
        args.push_back(parse_ground_term(in, kind));
        in.skip_inline_space();
      }
    }
    in.expect(')', "after Skolem arguments");
    sym.arity = static_cast<std::uint32_t>(args.size());
    return GroundTerm::function(std::move(sym), std::move(args));
  }
  if (std::isupper(static_cast<unsigned char>(name[0])))
    in.fail("variables cannot occur in facts: " + name,
            ParseError::Code::VariableInFact);
  return GroundTerm::constant(std::move(name));
}

}  // namespace

RuleSet parse_rules(std::string_view text) {
  Scanner in(text);
  RuleSet rs;
  std::set<std::uint32_t> ids_seen;

  while (true) {
    in.skip_space_and_comments();
    if (in.at_end()) break;

    Rule rule;
    rule.id = static_cast<std::uint32_t>(in.line());
    bool explicit_id = false;
    if (in.consume('@')) {
      in.skip_inline_space();
      rule.id = static_cast<std::uint32_t>(in.natural());
      in.skip_inline_space();
      in.expect(':', "after rule id");
      explicit_id = true;
    }
    (void)explicit_id;

    in.skip_inline_space();
    if (!at_arrow(in)) {
      rule.body.push_back(parse_rule_atom(in));
      in.skip_inline_space();
      while (in.consume(',')) {
        rule.body.push_back(parse_rule_atom(in));
        in.skip_inline_space();
      }
    }
    in.skip_inline_space();
    in.expect('-', "the rule arrow");
    in.expect('>', "the rule arrow");

    std::vector<FunctionFreeAtom> disjunct;
    disjunct.push_back(parse_rule_atom(in));
    in.skip_inline_space();
    while (in.consume(',')) {
      disjunct.push_back(parse_rule_atom(in));
      in.skip_inline_space();
    }
    rule.head.push_back(std::move(disjunct));
    while (in.consume('|')) {
      std::vector<FunctionFreeAtom> next;
      next.push_back(parse_rule_atom(in));
      in.skip_inline_space();
      while (in.consume(',')) {
        next.push_back(parse_rule_atom(in));
        in.skip_inline_space();
      }
      rule.head.push_back(std::move(next));
      in.skip_inline_space();
    }

    in.skip_inline_space();
    if (!in.at_line_end()) in.fail("unexpected trailing input after rule");
    if (!ids_seen.insert(rule.id).second)
      in.fail("duplicate rule id " + std::to_string(rule.id),
              ParseError::Code::DuplicateRuleId);
    rs.rules.push_back(std::move(rule));
  }
  return rs;
}

FactSet parse_facts(std::string_view text, FactFileKind kind) {
  Scanner in(text);
  FactSet out;
  while (true) {
    in.skip_space_and_comments();
    if (in.at_end()) break;
    Fact fact;
    fact.predicate = in.ident();
    in.skip_inline_space();
    in.expect('(', "after predicate name");
    fact.terms.push_back(parse_ground_term(in, kind));
    in.skip_inline_space();
    while (in.consume(',')) {
      fact.terms.push_back(parse_ground_term(in, kind));
      in.skip_inline_space();
    }
    in.expect(')', "after fact arguments");
    in.skip_inline_space();
    in.expect('.', "after a fact");
    out.insert(std::move(fact));
  }
  return out;
}

GroundTerm parse_term(std::string_view text) {
  Scanner in(text);
  in.skip_space_and_comments();
  GroundTerm t = parse_ground_term(in, FactFileKind::General);
  in.skip_space_and_comments();
  if (!in.at_end()) in.fail("unexpected trailing input after term");
  return t;
}

namespace {

std::string render(const VarOrConst& t) {
  if (!t.is_var()) return t.name;
  std::string out = t.name;
  out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

std::string render(const FunctionFreeAtom& atom) {
  std::string out = atom.predicate + "(";
  for (std::size_t i = 0; i < atom.terms.size(); ++i) {
    if (i > 0) out += ",";
    out += render(atom.terms[i]);
  }
  return out + ")";
}

std::string render_atoms(const std::vector<FunctionFreeAtom>& atoms) {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i > 0) out += ", ";
    out += render(atoms[i]);
  }
  return out;
}

}  // namespace

std::string to_text(const Rule& r) {
  std::string out = "@" + std::to_string(r.id) + ": " + render_atoms(r.body) + " -> ";
  if (r.body.empty()) out = "@" + std::to_string(r.id) + ": -> ";
  for (std::size_t d = 0; d < r.head.size(); ++d) {
    if (d > 0) out += " | ";
    out += render_atoms(r.head[d]);
  }
  return out;
}

std::string serialize_rules(const RuleSet& rs) {
  std::string out;
  for (const Rule& r : rs.rules) out += to_text(r) + "\n";
  return out;
}

std::vector<std::string> fact_strings_sorted(const FactSet& F) {
  std::vector<std::string> out;
  out.reserve(F.size());
  for (const Fact& f : F) out.push_back(to_text(f));
  std::sort(out.begin(), out.end());
  return out;
}

std::string serialize_facts(const FactSet& F) {
  std::string out;
  for (const std::string& s : fact_strings_sorted(F)) out += s + ".\n";
  return out;
}

namespace {

using nlohmann::ordered_json;

const char* variant_name(ObsolescenceKind kind) {
  return kind == ObsolescenceKind::Restricted ? "restricted" : "skolem";
}

const char* status_name(BranchStatus status) {
  return status == BranchStatus::Saturated ? "saturated" : "budget_exhausted";
}

const char* notion_name(MfaNotion notion) {
  switch (notion) {
    case MfaNotion::Mfa: return "mfa";
    case MfaNotion::Dmfa: return "dmfa";
    case MfaNotion::Rmfa: return "rmfa";
  }
  return "mfa";
}

ordered_json subs_json(const GroundSubstitution& subs) {
  ordered_json out = ordered_json::object();
  for (const auto& [var, term] : subs) out[var] = term.text();
  return out;
}

ordered_json origin_json(const std::pair<Trigger, std::size_t>& origin) {
  ordered_json out = ordered_json::object();
  out["rule_id"] = origin.first.rule.id;
  out["subs"] = subs_json(origin.first.subs);
  out["disjunct"] = origin.second;
  return out;
}

ordered_json node_json(const ChaseNode& node) {
  ordered_json out = ordered_json::object();
  out["facts"] = fact_strings_sorted(node.facts);
  if (node.origin) out["origin"] = origin_json(*node.origin);
  return out;
}

ordered_json tree_node_json(const ChaseTreeNode& node) {
  ordered_json out = node_json(node.node);
  if (node.leaf_status) out["status"] = status_name(*node.leaf_status);
  ordered_json children = ordered_json::array();
  for (const ChaseTreeNode& child : node.children) children.push_back(tree_node_json(child));
  out["children"] = std::move(children);
  return out;
}

ordered_json report_header(const char* type) {
  ordered_json out = ordered_json::object();
  out["schema"] = report_schema;
  out["type"] = type;
  return out;
}

}  // namespace

nlohmann::ordered_json report_branch(const ChaseBranch& b, ObsolescenceKind kind) {
  ordered_json out = report_header("branch");
  out["variant"] = variant_name(kind);
  out["status"] = status_name(b.status);
  ordered_json nodes = ordered_json::array();
  for (const ChaseNode& node : b.nodes) nodes.push_back(node_json(node));
  out["nodes"] = std::move(nodes);
  return out;
}

nlohmann::ordered_json report_tree(const ChaseTree& tree, ObsolescenceKind kind) {
  ordered_json out = report_header("tree");
  out["variant"] = variant_name(kind);
  out["root"] = tree_node_json(tree.root);
  ordered_json results = ordered_json::array();
  for (const TreeResult& r : tree_results(tree)) {
    ordered_json entry = ordered_json::object();
    entry["facts"] = fact_strings_sorted(r.facts);
    entry["status"] = status_name(r.status);
    results.push_back(std::move(entry));
  }
  out["results"] = std::move(results);
  return out;
}

nlohmann::ordered_json report_verdict(MfaNotion notion, const TerminationVerdict& v) {
  ordered_json out = report_header("verdict");
  out["notion"] = notion_name(notion);
  out["verdict"] = v.acyclic ? "acyclic" : "not_in_notion";
  if (v.witness) out["witness"] = v.witness->text();
  out["rounds"] = v.rounds;
  if (v.acyclic) out["mfa_set_size"] = v.mfa_set_size;
  return out;
}

nlohmann::ordered_json report_witnesses(const std::vector<AltMatchWitness>& ws) {
  ordered_json out = report_header("alt-matches");
  ordered_json list = ordered_json::array();
  for (const AltMatchWitness& w : ws) {
    ordered_json entry = ordered_json::object();
    entry["rule_id"] = w.trigger.rule.id;
    entry["subs"] = subs_json(w.trigger.subs);
    entry["disjunct"] = w.disjunct_index;
    ordered_json mapping = ordered_json::object();
    for (const auto& [from, to] : w.h_alt.entries()) mapping[from.text()] = to.text();
    entry["mapping"] = std::move(mapping);
    entry["dropped"] = w.dropped_term.text();
    list.push_back(std::move(entry));
  }
  out["witnesses"] = std::move(list);
  return out;
}

nlohmann::ordered_json report_facts(const FactSet& F) {
  ordered_json out = report_header("facts");
  out["facts"] = fact_strings_sorted(F);
  return out;
}

}  // namespace chase
