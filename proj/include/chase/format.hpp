#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "chase/alt_match.hpp"
#include "chase/engine.hpp"
#include "chase/termination.hpp"

namespace chase {

struct ParseError : std::runtime_error {
  enum class Code {
    Syntax,
    ReservedConstant,   // "*" written where a user constant is required
    VariableInFact,     // uppercase identifier inside a fact file
    SkolemInDatabase,   // Skolem term inside a database file
    DuplicateRuleId,
  };

  ParseError(Code code, std::size_t line, std::size_t col, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + message),
        code(code), line(line), col(col) {}

  Code code;
  std::size_t line;
  std::size_t col;
};

// Rule files: one rule per line, "['@' NAT ':'] body '->' head", atoms
// comma-separated, head disjuncts '|'-separated, '%' starts a comment.
// Uppercase identifiers are variables (normalized to lowercase in the abstract
// syntax), lowercase identifiers are constants. Rules without an explicit id
// get their 1-based line number. Duplicate ids raise ParseError.
RuleSet parse_rules(std::string_view text);

enum class FactFileKind {
  Database,  // constants only: Skolem terms and "*" rejected
  General,   // Skolem terms and "*" allowed
};

// Fact files: "PRED(term,...)." with ground terms; Skolem terms are written
// f[<rule_id>,<disjunct_index>,<var>](<args>).
FactSet parse_facts(std::string_view text, FactFileKind kind);

// Parses a single ground term (general syntax). Convenience for tests/CLI.
GroundTerm parse_term(std::string_view text);

// Canonical text forms. parse_rules(serialize_rules(rs)) == rs for rule sets
// whose variable names are lowercase-normalized, and likewise for fact sets.
std::string serialize_rules(const RuleSet& rs);
std::string serialize_facts(const FactSet& F);
std::string to_text(const Rule& r);

// Rendered facts sorted lexicographically (the serialization order).
std::vector<std::string> fact_strings_sorted(const FactSet& F);

// JSON reports. Key order is fixed by construction and array contents are
// canonically sorted, so equal inputs serialize byte-identically.
inline const std::string report_schema = "chase-report/1";

nlohmann::ordered_json report_branch(const ChaseBranch& b, ObsolescenceKind kind);
nlohmann::ordered_json report_tree(const ChaseTree& tree, ObsolescenceKind kind);
nlohmann::ordered_json report_verdict(MfaNotion notion, const TerminationVerdict& v);
nlohmann::ordered_json report_witnesses(const std::vector<AltMatchWitness>& ws);
nlohmann::ordered_json report_facts(const FactSet& F);

}  // namespace chase
