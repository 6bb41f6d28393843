#include <doctest.h>

#include "chase/engine.hpp"
#include "chase/termination.hpp"
#include "support/fixtures.hpp"
#include "support/gen.hpp"

using chase::FactSet;
using chase::GroundTerm;
using chase::MfaNotion;
using chase::MfaOutcome;
using chase::ObsolescenceKind;
using chase::RuleSet;
using chase::Trigger;
using fixtures::facts;
using fixtures::term;

namespace {

Trigger trigger_for(const RuleSet& rs, chase::GroundSubstitution subs) {
  return Trigger{rs.rules.at(0), std::move(subs)};
}

// Rewrites every constant outside `keep` to the critical constant. This is the
// abstraction that sends a concrete chase into the critical-instance world.
GroundTerm collapse(const GroundTerm& t, const std::set<std::string>& keep) {
  if (t.is_constant()) {
    if (t.constant_name() == chase::critical_constant || keep.count(t.constant_name()))
      return t;
    return GroundTerm::constant(chase::critical_constant);
  }
  std::vector<GroundTerm> args;
  for (const GroundTerm& a : t.args()) args.push_back(collapse(a, keep));
  return GroundTerm::function(t.symbol(), std::move(args));
}

chase::Fact collapse(const chase::Fact& f, const std::set<std::string>& keep) {
  chase::Fact out;
  out.predicate = f.predicate;
  for (const GroundTerm& t : f.terms) out.terms.push_back(collapse(t, keep));
  return out;
}

chase::GroundSubstitution collapse(const chase::GroundSubstitution& subs,
                                   const std::set<std::string>& keep) {
  chase::GroundSubstitution out;
  for (const auto& [v, t] : subs) out.emplace(v, collapse(t, keep));
  return out;
}

// A database over the single fresh constant "e": one fact per chosen predicate.
FactSet sample_database(gen::Rng& rng, const chase::Signature& sig) {
  FactSet db;
  const GroundTerm e = GroundTerm::constant("e");
  for (const auto& [pred, arity] : sig.predicates) {
    if (!rng.coin(0.7)) continue;
    chase::Fact f;
    f.predicate = pred;
    f.terms.assign(arity, e);
    db.insert(f);
  }
  if (db.empty() && !sig.predicates.empty()) {
    chase::Fact f;
    f.predicate = sig.predicates.begin()->first;
    f.terms.assign(sig.predicates.begin()->second, e);
    db.insert(f);
  }
  return db;
}

std::size_t max_disjuncts(const RuleSet& rs) {
  std::size_t m = 1;
  for (const chase::Rule& r : rs.rules) m = std::max(m, r.head.size());
  return m;
}

std::size_t tree_depth(const chase::ChaseTreeNode& n) {
  std::size_t d = 0;
  for (const chase::ChaseTreeNode& c : n.children) d = std::max(d, tree_depth(c));
  return d + 1;
}

bool all_leaves_saturated(const chase::ChaseTree& tree) {
  for (const chase::TreeResult& r : chase::tree_results(tree))
    if (r.status != chase::BranchStatus::Saturated) return false;
  return true;
}

// The randomized corpus shared by the saturation-bound, budget, and ordering
// properties: fixture rule sets plus generated small ones.
std::vector<RuleSet> termination_corpus() {
  std::vector<RuleSet> corpus;
  corpus.push_back(chase::parse_rules(fixtures::kb1_rules));
  corpus.push_back(chase::parse_rules(fixtures::kb2_rules));
  corpus.push_back(chase::parse_rules(fixtures::kb3_rules));
  corpus.push_back(chase::parse_rules("P(X,Y) -> Q(Y,U)\nQ(X,Y) -> S(X)\n"));
  corpus.push_back(chase::parse_rules("P(X,Y) -> Q(Y)\n"));
  corpus.push_back(chase::parse_rules("P(X,Y) -> S(Y) | Q(X,U)\n"));

  gen::Rng rng(777);
  gen::RuleOptions opt;
  opt.max_body_atoms = 2;
  opt.max_disjuncts = 2;
  opt.max_head_atoms = 2;
  while (corpus.size() < 40) {
    RuleSet rs = gen::random_rule_set(rng, 2, gen::default_preds(), opt);
    if (chase::validate_ruleset(rs).ok()) corpus.push_back(std::move(rs));
  }
  return corpus;
}

const std::string star_f = "f[1,1,z](*)";
const std::string star_ff = "f[1,1,z](f[1,1,z](*))";

// "_bt<n>" names are reserved for backtracking and unreachable from the input
// grammar, so expected values are built directly rather than parsed.
GroundTerm bt(std::size_t n) {
  return GroundTerm::constant("_bt" + std::to_string(n));
}

GroundTerm wrap(const GroundTerm& t) {
  return GroundTerm::function(chase::SkolemFS{1, 1, "z", 1}, {t});
}

}  // namespace

TEST_CASE("critical_instance enumerates all constant tuples") {
  CHECK(chase::critical_instance(chase::parse_rules(fixtures::kb1_rules)) ==
        facts("P(*,*).\nS(*).\n"));
  CHECK(chase::critical_instance(chase::parse_rules("P(X,c0) -> Q(X)\n")) ==
        facts("P(*,*).\nP(*,c0).\nP(c0,*).\nP(c0,c0).\nQ(*).\nQ(c0).\n"));
  CHECK(chase::critical_instance(RuleSet{}).empty());
}

TEST_CASE("rename_apart gives every critical-constant position its own name") {
  RuleSet rs1 = chase::parse_rules(fixtures::kb1_rules);
  chase::FreshConstants ctx;
  Trigger t = chase::rename_apart(
      trigger_for(rs1, {{"x", term("*")}, {"y", term("*")}}), ctx);
  CHECK(t.subs.at("x") == bt(0));
  CHECK(t.subs.at("y") == bt(1));

  chase::FreshConstants ctx2;
  Trigger nested = chase::rename_apart(
      trigger_for(rs1, {{"x", term("*")}, {"y", term(star_f)}}), ctx2);
  CHECK(nested.subs.at("x") == bt(0));
  CHECK(nested.subs.at("y") == wrap(bt(1)));

  // Ordinary constants survive; a shared variable keeps one name.
  chase::FreshConstants ctx3;
  RuleSet self = chase::parse_rules("P(X,X), Q(c0) -> S(X)\n");
  Trigger kept = chase::rename_apart(
      trigger_for(self, {{"x", term("*")}}), ctx3);
  CHECK(kept.subs.at("x") == bt(0));
  Trigger untouched = chase::rename_apart(
      trigger_for(self, {{"x", term("c0")}}), ctx3);
  CHECK(untouched.subs.at("x") == term("c0"));
}

TEST_CASE("backtrack_facts reconstructs the producing applications") {
  RuleSet rs1 = chase::parse_rules(fixtures::kb1_rules);

  // Skolem-free bodies backtrack to themselves.
  chase::FreshConstants ctx0;
  CHECK(chase::backtrack_facts(
            trigger_for(rs1, {{"x", term("c1")}, {"y", term("c2")}}), rs1, ctx0) ==
        facts("P(c1,c2).\n"));

  // One level: the producer of f(_bt1) contributes its body (with a fresh
  // non-frontier value) and its full disjunct-1 head.
  chase::FreshConstants ctx;
  Trigger t = chase::rename_apart(
      trigger_for(rs1, {{"x", term("*")}, {"y", term(star_f)}}), ctx);
  CHECK(chase::fact_strings_sorted(chase::backtrack_facts(t, rs1, ctx)) ==
        std::vector<std::string>{
            "P(_bt0,f[1,1,z](_bt1))",
            "P(_bt1,f[1,1,z](_bt1))",
            "P(_bt2,_bt1)",
            "P(f[1,1,z](_bt1),_bt1)",
        });

  // Two levels: both nested applications are reconstructed, shallow first.
  chase::FreshConstants ctx2;
  Trigger deep = trigger_for(rs1, {{"x", term("c9")},
                                   {"y", term("f[1,1,z](f[1,1,z](c5))")}});
  CHECK(chase::fact_strings_sorted(chase::backtrack_facts(deep, rs1, ctx2)) ==
        std::vector<std::string>{
            "P(_bt0,c5)",
            "P(_bt1,f[1,1,z](c5))",
            "P(c5,f[1,1,z](c5))",
            "P(c9,f[1,1,z](f[1,1,z](c5)))",
            "P(f[1,1,z](c5),c5)",
            "P(f[1,1,z](c5),f[1,1,z](f[1,1,z](c5)))",
            "P(f[1,1,z](f[1,1,z](c5)),f[1,1,z](c5))",
        });

  // Unknown producers are an error.
  chase::FreshConstants ctx3;
  Trigger ghost = trigger_for(rs1, {{"x", term("c1")}, {"y", term("f[99,0,q](c2)")}});
  CHECK_THROWS_AS(chase::backtrack_facts(ghost, rs1, ctx3), chase::UnknownRuleId);
}

TEST_CASE("determinized obsolescence needs every disjunct present") {
  RuleSet rs1 = chase::parse_rules(fixtures::kb1_rules);
  Trigger crit = trigger_for(rs1, {{"x", term("*")}, {"y", term("*")}});
  // Only the first disjunct's head is present initially.
  CHECK_FALSE(chase::moc_is_obsolete(MfaNotion::Mfa, crit, facts("P(*,*).\nS(*).\n"), rs1));
  // Both heads present: obsolete.
  CHECK(chase::moc_is_obsolete(
      MfaNotion::Mfa, crit,
      facts("P(*,*).\nS(*).\nP(*," + star_f + ").\nP(" + star_f + ",*).\n"), rs1));
}

TEST_CASE("blocking distinguishes the restricted and skolem readings") {
  RuleSet rs1 = chase::parse_rules(fixtures::kb1_rules);
  Trigger deep = trigger_for(rs1, {{"x", term("*")}, {"y", term(star_f)}});
  FactSet state = facts("P(*,*).\nS(*).\nP(*," + star_f + ").\nP(" + star_f + ",*).\n");
  // The backtracked facts contain a two-cycle the restricted reading can reuse.
  CHECK(chase::moc_is_obsolete(MfaNotion::Rmfa, deep, state, rs1));
  // The exact Skolem head over f(_bt1) is not among the backtracked facts.
  CHECK_FALSE(chase::moc_is_obsolete(MfaNotion::Dmfa, deep, state, rs1));
}

TEST_CASE("the disjunctive fixture separates the three notions") {
  RuleSet rs1 = chase::parse_rules(fixtures::kb1_rules);

  chase::TerminationVerdict mfa = chase::analyze_termination(rs1, MfaNotion::Mfa);
  CHECK_FALSE(mfa.acyclic);
  REQUIRE(mfa.witness.has_value());
  CHECK(*mfa.witness == term(star_ff));

  chase::TerminationVerdict dmfa = chase::analyze_termination(rs1, MfaNotion::Dmfa);
  CHECK_FALSE(dmfa.acyclic);
  REQUIRE(dmfa.witness.has_value());
  CHECK(*dmfa.witness == term(star_ff));

  chase::TerminationVerdict rmfa = chase::analyze_termination(rs1, MfaNotion::Rmfa);
  CHECK(rmfa.acyclic);
  CHECK(rmfa.mfa_set_size == 4);

  MfaOutcome fix = chase::compute_mfa_set(rs1, MfaNotion::Rmfa);
  REQUIRE(fix.kind == MfaOutcome::Kind::AcyclicFixpoint);
  CHECK(fix.mfa_set ==
        facts("P(*,*).\nS(*).\nP(*," + star_f + ").\nP(" + star_f + ",*).\n"));
}

TEST_CASE("the successor rule is cyclic under every notion") {
  RuleSet rs3 = chase::parse_rules(fixtures::kb3_rules);
  const GroundTerm witness = term("f[1,0,z](f[1,0,z](*))");
  for (MfaNotion notion : {MfaNotion::Mfa, MfaNotion::Dmfa, MfaNotion::Rmfa}) {
    chase::TerminationVerdict v = chase::analyze_termination(rs3, notion);
    CHECK_FALSE(v.acyclic);
    REQUIRE(v.witness.has_value());
    CHECK(*v.witness == witness);
    CHECK(chase::is_cyclic(*v.witness));
  }
}

TEST_CASE("compute_mfa_set reports the round that went cyclic") {
  RuleSet rs1 = chase::parse_rules(fixtures::kb1_rules);
  MfaOutcome out = chase::compute_mfa_set(rs1, MfaNotion::Mfa);
  CHECK(out.kind == MfaOutcome::Kind::CyclicTermFound);
  CHECK(out.rounds == 2);
  MfaOutcome fix = chase::compute_mfa_set(rs1, MfaNotion::Rmfa);
  CHECK(fix.rounds == 1);
}

TEST_CASE("an explicit tiny budget is reported as exhausted") {
  RuleSet rs3 = chase::parse_rules(fixtures::kb3_rules);
  MfaOutcome out = chase::compute_mfa_set(rs3, MfaNotion::Mfa, 1);
  CHECK(out.kind == MfaOutcome::Kind::BudgetExhausted);
  CHECK(out.rounds == 1);
}

TEST_CASE("property: the intrinsic budget is never exhausted") {
  for (const RuleSet& rs : termination_corpus()) {
    for (MfaNotion notion : {MfaNotion::Mfa, MfaNotion::Dmfa, MfaNotion::Rmfa}) {
      MfaOutcome out = chase::compute_mfa_set(rs, notion, chase::intrinsic_round_budget(rs));
      CHECK(out.kind != MfaOutcome::Kind::BudgetExhausted);
      if (out.kind == MfaOutcome::Kind::CyclicTermFound) {
        REQUIRE(out.witness.has_value());
        CHECK(chase::is_cyclic(*out.witness));
      } else {
        // A fixpoint certifies the absence of cyclic terms.
        for (const chase::Fact& f : out.mfa_set)
          for (const GroundTerm& t : f.terms) CHECK_FALSE(chase::is_cyclic(t));
      }
    }
  }
}

TEST_CASE("property: skolem-blocked acyclicity implies restricted-blocked acyclicity") {
  int transfers = 0;
  for (const RuleSet& rs : termination_corpus()) {
    if (chase::analyze_termination(rs, MfaNotion::Dmfa).acyclic) {
      CHECK(chase::analyze_termination(rs, MfaNotion::Rmfa).acyclic);
      ++transfers;
    }
  }
  CHECK(transfers > 5);  // the corpus must contain acyclic sets
}

TEST_CASE("property: acyclic verdicts guarantee saturation within the derived bound") {
  int acyclic_seen = 0, runs_checked = 0;
  for (const RuleSet& rs : termination_corpus()) {
    const chase::Signature sig = chase::signature_of(rs);
    if (sig.predicates.empty()) continue;
    for (MfaNotion notion : {MfaNotion::Mfa, MfaNotion::Dmfa, MfaNotion::Rmfa}) {
      chase::TerminationVerdict v = chase::analyze_termination(rs, notion);
      if (!v.acyclic) continue;
      ++acyclic_seen;
      const std::size_t bound = v.mfa_set_size * max_disjuncts(rs);
      const ObsolescenceKind kind =
          notion == MfaNotion::Rmfa ? ObsolescenceKind::Restricted : ObsolescenceKind::Skolem;
      gen::Rng rng(1000 + static_cast<std::uint64_t>(notion));
      for (int s = 0; s < 10; ++s) {
        chase::KnowledgeBase kb{rs, sample_database(rng, sig)};
        ++runs_checked;
        chase::ChaseConfig cfg;
        cfg.kind = kind;
        if (chase::is_deterministic(rs)) {
          cfg.max_steps = bound;
          chase::ChaseBranch b = chase::run_branch(kb, cfg);
          CHECK(b.status == chase::BranchStatus::Saturated);
        } else {
          cfg.max_steps = 4000;
          chase::ChaseTree t = chase::run_tree(kb, cfg);
          CHECK(all_leaves_saturated(t));
          CHECK(tree_depth(t.root) - 1 <= bound);
        }
      }
    }
  }
  CHECK(acyclic_seen >= 10);
  CHECK(runs_checked >= 100);
}

TEST_CASE("property: collapsing fresh constants embeds chase results in the mfa set") {
  for (const RuleSet& rs : termination_corpus()) {
    const chase::Signature sig = chase::signature_of(rs);
    if (sig.predicates.empty()) continue;
    for (MfaNotion notion : {MfaNotion::Mfa, MfaNotion::Rmfa}) {
      MfaOutcome out = chase::compute_mfa_set(rs, notion);
      if (out.kind != MfaOutcome::Kind::AcyclicFixpoint) continue;
      const ObsolescenceKind kind =
          notion == MfaNotion::Rmfa ? ObsolescenceKind::Restricted : ObsolescenceKind::Skolem;
      gen::Rng rng(2000);
      for (int s = 0; s < 5; ++s) {
        chase::KnowledgeBase kb{rs, sample_database(rng, sig)};
        chase::ChaseConfig cfg;
        cfg.kind = kind;
        cfg.max_steps = 4000;
        chase::ChaseTree tree = chase::run_tree(kb, cfg);
        if (!all_leaves_saturated(tree)) continue;
        for (const chase::TreeResult& r : chase::tree_results(tree))
          for (const chase::Fact& f : r.facts)
            CHECK(out.mfa_set.count(collapse(f, sig.constants)) == 1);
      }
    }
  }
}

TEST_CASE("property: blocked triggers stay obsolete in sampled concrete runs") {
  int matched = 0;
  for (const RuleSet& rs : termination_corpus()) {
    const chase::Signature sig = chase::signature_of(rs);
    if (sig.predicates.empty()) continue;
    for (MfaNotion notion : {MfaNotion::Dmfa, MfaNotion::Rmfa}) {
      MfaOutcome out = chase::compute_mfa_set(rs, notion);
      if (out.kind != MfaOutcome::Kind::AcyclicFixpoint) continue;

      // The parallel determinized chase's blocked triggers on the final set.
      std::vector<Trigger> blocked;
      for (const Trigger& t : chase::enumerate_triggers(rs, out.mfa_set))
        if (chase::moc_is_obsolete(notion, t, out.mfa_set, rs)) blocked.push_back(t);
      if (blocked.empty()) continue;

      const ObsolescenceKind kind =
          notion == MfaNotion::Rmfa ? ObsolescenceKind::Restricted : ObsolescenceKind::Skolem;
      gen::Rng rng(3000);
      for (int s = 0; s < 5; ++s) {
        chase::KnowledgeBase kb{rs, sample_database(rng, sig)};
        for (std::size_t sel : {std::size_t{0}, std::size_t{1}}) {
          chase::ChaseConfig cfg;
          cfg.kind = kind;
          cfg.max_steps = 60;
          cfg.selector = chase::DisjunctSelector::fixed(sel);
          chase::ChaseBranch b = chase::run_branch(kb, cfg);
          for (const chase::ChaseNode& node : b.nodes) {
            for (const Trigger& live : chase::enumerate_triggers(rs, node.facts)) {
              chase::GroundSubstitution abstract = collapse(live.subs, sig.constants);
              for (const Trigger& blk : blocked) {
                if (blk.rule.id != live.rule.id || blk.subs != abstract) continue;
                ++matched;
                CHECK(chase::is_obsolete(kind, live, node.facts));
              }
            }
          }
        }
      }
    }
  }
  CHECK(matched > 0);  // the sampling must hit at least one blocked instance
}
