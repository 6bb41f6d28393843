#pragma once

#include <string>

#include "chase/format.hpp"

namespace fixtures {

// Workhorse knowledge bases used across the test suite.
//
// kb1: one disjunctive rule over P/S; its restricted tree chase has exactly
//      two saturated leaves.
// kb2: one deterministic rule whose first chase step is already redundant
//      (alternative match folding the fresh term onto a database constant).
// kb3: the classic non-terminating successor rule.
inline const std::string kb1_rules = "P(X,Y) -> S(Y) | P(Y,Z), P(Z,Y)\n";
inline const std::string kb1_db = "P(a,b).\n";

inline const std::string kb2_rules = "P(X,Y) -> P(Y,Z), P(Y,X)\n";
inline const std::string kb2_db = "P(a,b).\n";

inline const std::string kb3_rules = "R(X,Y) -> R(Y,Z)\n";
inline const std::string kb3_db = "R(a,b).\n";

inline chase::KnowledgeBase kb(const std::string& rules, const std::string& db) {
  return chase::KnowledgeBase{chase::parse_rules(rules),
                              chase::parse_facts(db, chase::FactFileKind::Database)};
}

inline chase::KnowledgeBase kb1() { return kb(kb1_rules, kb1_db); }
inline chase::KnowledgeBase kb2() { return kb(kb2_rules, kb2_db); }
inline chase::KnowledgeBase kb3() { return kb(kb3_rules, kb3_db); }

inline chase::FactSet facts(const std::string& text) {
  return chase::parse_facts(text, chase::FactFileKind::General);
}

inline chase::GroundTerm term(const std::string& text) { return chase::parse_term(text); }

}  // namespace fixtures
