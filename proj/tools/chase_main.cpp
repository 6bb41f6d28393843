#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "chase/format.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

chase::RuleSet load_rules(const std::string& path) {
  chase::RuleSet rs = chase::parse_rules(read_file(path));
  chase::ValidationReport report = chase::validate_ruleset(rs);
  if (!report.ok()) {
    std::string message = "invalid rule set (" + path + "):";
    for (const chase::Violation& v : report.violations) message += "\n  " + v.detail;
    throw std::runtime_error(message);
  }
  return rs;
}

chase::DisjunctSelector parse_selector(const std::string& text) {
  if (text == "roundrobin") return chase::DisjunctSelector::round_robin();
  if (text.rfind("fixed:", 0) == 0)
    return chase::DisjunctSelector::fixed(std::stoul(text.substr(6)));
  if (text.rfind("script:", 0) == 0) {
    std::vector<std::size_t> script;
    std::stringstream list(text.substr(7));
    std::string item;
    while (std::getline(list, item, ',')) script.push_back(std::stoul(item));
    return chase::DisjunctSelector::scripted(std::move(script));
  }
  throw CLI::ValidationError("--select", "expected fixed:<d>, roundrobin or script:<d,...>");
}

chase::ObsolescenceKind parse_variant(const std::string& name) {
  if (name == "restricted") return chase::ObsolescenceKind::Restricted;
  if (name == "skolem") return chase::ObsolescenceKind::Skolem;
  throw CLI::ValidationError("--variant", "expected restricted or skolem");
}

chase::MfaNotion parse_notion(const std::string& name) {
  if (name == "mfa") return chase::MfaNotion::Mfa;
  if (name == "dmfa") return chase::MfaNotion::Dmfa;
  if (name == "rmfa") return chase::MfaNotion::Rmfa;
  throw CLI::ValidationError("--notion", "expected mfa, dmfa or rmfa");
}

void print_facts(const chase::FactSet& facts) {
  for (const std::string& s : chase::fact_strings_sorted(facts)) std::cout << s << ".\n";
}

const char* status_text(chase::BranchStatus status) {
  return status == chase::BranchStatus::Saturated ? "saturated" : "budget exhausted";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chase: reasoning over disjunctive existential rules"};
  app.require_subcommand(1);
  int exit_code = 0;

  // --- run ---------------------------------------------------------------
  auto* run = app.add_subcommand("run", "Run the chase on a rule set and database");
  struct {
    std::string rules, data, variant = "restricted", mode = "branch", select = "fixed:0";
    std::string out = "json";
    std::size_t max_steps = 1000;
  } run_opts;
  run->add_option("--rules", run_opts.rules, "rule file (.rls)")->required();
  run->add_option("--data", run_opts.data, "database file (.fct)")->required();
  run->add_option("--variant", run_opts.variant, "restricted|skolem");
  run->add_option("--mode", run_opts.mode, "branch|tree");
  run->add_option("--select", run_opts.select,
                  "branch-mode disjunct selector: fixed:<d>|roundrobin|script:<d,...>");
  run->add_option("--max-steps", run_opts.max_steps,
                  "application budget (branch) or node budget (tree)");
  run->add_option("--out", run_opts.out, "json|text");
  run->callback([&] {
    chase::KnowledgeBase kb{load_rules(run_opts.rules),
                            chase::parse_facts(read_file(run_opts.data),
                                               chase::FactFileKind::Database)};
    chase::ChaseConfig cfg;
    cfg.kind = parse_variant(run_opts.variant);
    cfg.max_steps = run_opts.max_steps;
    cfg.selector = parse_selector(run_opts.select);
    if (run_opts.mode == "branch") {
      chase::ChaseBranch branch = chase::run_branch(kb, cfg);
      if (run_opts.out == "json") {
        std::cout << chase::report_branch(branch, cfg.kind).dump() << "\n";
      } else {
        std::cout << "status: " << status_text(branch.status) << "\n"
                  << "nodes: " << branch.nodes.size() << "\n";
        print_facts(chase::result_of(branch));
      }
    } else if (run_opts.mode == "tree") {
      chase::ChaseTree tree = chase::run_tree(kb, cfg);
      if (run_opts.out == "json") {
        std::cout << chase::report_tree(tree, cfg.kind).dump() << "\n";
      } else {
        for (const chase::TreeResult& r : chase::tree_results(tree)) {
          std::cout << "result (" << status_text(r.status) << "):\n";
          print_facts(r.facts);
        }
      }
    } else {
      throw CLI::ValidationError("--mode", "expected branch or tree");
    }
  });

  // --- analyze -----------------------------------------------------------
  auto* analyze = app.add_subcommand("analyze", "Decide an MFA-style acyclicity notion");
  struct {
    std::string rules, notion, out = "json";
  } an_opts;
  analyze->add_option("--rules", an_opts.rules, "rule file (.rls)")->required();
  analyze->add_option("--notion", an_opts.notion, "mfa|dmfa|rmfa")->required();
  analyze->add_option("--out", an_opts.out, "json|text");
  analyze->callback([&] {
    chase::RuleSet rs = load_rules(an_opts.rules);
    chase::MfaNotion notion = parse_notion(an_opts.notion);
    chase::TerminationVerdict verdict = chase::analyze_termination(rs, notion);
    if (an_opts.out == "json") {
      std::cout << chase::report_verdict(notion, verdict).dump() << "\n";
    } else if (verdict.acyclic) {
      std::cout << an_opts.notion << ": acyclic (" << verdict.mfa_set_size
                << " facts, " << verdict.rounds << " rounds)\n";
    } else {
      std::cout << an_opts.notion << ": not in notion (witness "
                << verdict.witness->text() << ", " << verdict.rounds << " rounds)\n";
    }
    if (!verdict.acyclic) exit_code = 1;
  });

  // --- check-core --------------------------------------------------------
  auto* core = app.add_subcommand("check-core", "Check whether a fact set is a core");
  struct {
    std::string facts;
    bool weak = false, strong = false;
  } core_opts;
  core->add_option("--facts", core_opts.facts, "fact file (general syntax)")->required();
  core->add_flag("--weak", core_opts.weak, "check the weak-core property");
  core->add_flag("--strong", core_opts.strong, "check the strong-core property (default)");
  core->callback([&] {
    chase::FactSet F =
        chase::parse_facts(read_file(core_opts.facts), chase::FactFileKind::General);
    bool weak = core_opts.weak && !core_opts.strong;
    bool result = weak ? chase::is_weak_core(F) : chase::is_strong_core(F);
    std::cout << (weak ? "weak" : "strong") << " core: " << (result ? "yes" : "no") << "\n";
    if (!result) exit_code = 1;
  });

  // --- alt-matches -------------------------------------------------------
  auto* alt = app.add_subcommand("alt-matches",
                                 "Search a chase branch for alternative matches");
  struct {
    std::string rules, data, variant = "restricted", select = "fixed:0", out = "json";
    std::size_t max_steps = 1000;
  } alt_opts;
  alt->add_option("--rules", alt_opts.rules, "rule file (.rls)")->required();
  alt->add_option("--data", alt_opts.data, "database file (.fct)")->required();
  alt->add_option("--variant", alt_opts.variant, "restricted|skolem");
  alt->add_option("--select", alt_opts.select, "disjunct selector");
  alt->add_option("--max-steps", alt_opts.max_steps, "application budget");
  alt->add_option("--out", alt_opts.out, "json|text");
  alt->callback([&] {
    chase::KnowledgeBase kb{load_rules(alt_opts.rules),
                            chase::parse_facts(read_file(alt_opts.data),
                                               chase::FactFileKind::Database)};
    chase::ChaseConfig cfg;
    cfg.kind = parse_variant(alt_opts.variant);
    cfg.max_steps = alt_opts.max_steps;
    cfg.selector = parse_selector(alt_opts.select);
    chase::ChaseBranch branch = chase::run_branch(kb, cfg);
    std::vector<chase::AltMatchWitness> witnesses = chase::find_alternative_matches(branch);
    if (alt_opts.out == "json") {
      std::cout << chase::report_witnesses(witnesses).dump() << "\n";
    } else if (witnesses.empty()) {
      std::cout << "no alternative matches\n";
    } else {
      for (const chase::AltMatchWitness& w : witnesses) {
        std::cout << "rule " << w.trigger.rule.id << " disjunct " << w.disjunct_index
                  << ": drop " << w.dropped_term.text() << " via {";
        bool first = true;
        for (const auto& [from, to] : w.h_alt.entries()) {
          if (!first) std::cout << ", ";
          std::cout << from.text() << " -> " << to.text();
          first = false;
        }
        std::cout << "}\n";
      }
    }
    if (witnesses.empty()) exit_code = 1;
  });

  // --- check-hom ---------------------------------------------------------
  auto* hom = app.add_subcommand("check-hom", "Find a homomorphism between fact sets");
  struct {
    std::string from, to;
  } hom_opts;
  hom->add_option("--from", hom_opts.from, "source fact file")->required();
  hom->add_option("--to", hom_opts.to, "target fact file")->required();
  hom->callback([&] {
    chase::FactSet A =
        chase::parse_facts(read_file(hom_opts.from), chase::FactFileKind::General);
    chase::FactSet B =
        chase::parse_facts(read_file(hom_opts.to), chase::FactFileKind::General);
    if (std::optional<chase::GroundTermMapping> h = chase::find_homomorphism(A, B)) {
      if (h->entries().empty()) {
        std::cout << "homomorphism: identity\n";
      } else {
        std::cout << "homomorphism:\n";
        for (const auto& [from, to] : h->entries())
          std::cout << "  " << from.text() << " -> " << to.text() << "\n";
      }
    } else {
      std::cout << "none\n";
      exit_code = 1;
    }
  });

  // --- models ------------------------------------------------------------
  auto* models = app.add_subcommand("models", "Check whether a fact set models a knowledge base");
  struct {
    std::string facts, rules, data;
  } model_opts;
  models->add_option("--facts", model_opts.facts, "candidate model (general syntax)")->required();
  models->add_option("--rules", model_opts.rules, "rule file (.rls)")->required();
  models->add_option("--data", model_opts.data, "database file (.fct)")->required();
  models->callback([&] {
    chase::FactSet F =
        chase::parse_facts(read_file(model_opts.facts), chase::FactFileKind::General);
    chase::KnowledgeBase kb{load_rules(model_opts.rules),
                            chase::parse_facts(read_file(model_opts.data),
                                               chase::FactFileKind::Database)};
    bool result = chase::models_kb(F, kb);
    std::cout << "model: " << (result ? "yes" : "no") << "\n";
    if (!result) exit_code = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const chase::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
