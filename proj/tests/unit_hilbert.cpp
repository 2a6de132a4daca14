#include <bdluk/decision.hpp>
#include <bdluk/errors.hpp>
#include <bdluk/hilbert.hpp>
#include <bdluk/luk_eval.hpp>
#include <bdluk/syntax.hpp>

#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "support/generators.hpp"

using namespace bdluk;

namespace {

OuterRef four(const char* s) { return parse_outer(s, Dialect::Four); }
BDRef bd(const char* s) { return parse_bd(s); }

}  // namespace

TEST_SUITE("hilbert") {
  TEST_CASE("schema bookkeeping") {
    CHECK(schema_name(AxiomSchema::Contr) == "contr");
    CHECK(schema_arity(AxiomSchema::Mon) == 2);
    CHECK(schema_arity(AxiomSchema::Part1) == 1);
    CHECK(schema_variants(AxiomSchema::Equiv) == 4);
    CHECK(schema_variants(AxiomSchema::Contr) == 2);
    CHECK(schema_variants(AxiomSchema::Neg) == 2);
    CHECK(schema_variants(AxiomSchema::Part2) == 24);
    // outer tautologies are justified in proofs, never instantiated
    CHECK_THROWS_AS(schema_arity(AxiomSchema::LukTaut), InputError);
    CHECK_THROWS_AS(instantiate(AxiomSchema::LukTaut, {bd("p")}), InputError);
  }

  TEST_CASE("instantiation pins") {
    CHECK(render(instantiate(AxiomSchema::Neg, {bd("p")}, 0)) == "Bl{-p} <-> Db{p}");
    CHECK(render(instantiate(AxiomSchema::Neg, {bd("p")}, 1)) == "Cf{-p} <-> Cf{p}");
    CHECK(render(instantiate(AxiomSchema::Contr, {bd("p")}, 0)) == "~Bl{p & -p}");
    CHECK(render(instantiate(AxiomSchema::Contr, {bd("p")}, 1)) == "Cf{p} <-> Cf{p & -p}");
    CHECK(render(instantiate(AxiomSchema::Mon, {bd("p"), bd("p | q")})) ==
          "Bl{p} (+) Cf{p} -> Bl{p | q} (+) Cf{p | q}");
    CHECK(render(instantiate(AxiomSchema::Part1, {bd("p")})) ==
          "Bl{p} (+) Db{p} (+) Cf{p} (+) Uc{p}");
    CHECK(render(instantiate(AxiomSchema::Ex, {bd("p"), bd("q")})) ==
          "Bl{p | q} (+) Cf{p | q} <-> Bl{p} (+) Cf{p} (-) (Bl{p & q} (+) Cf{p & q}) (+) "
          "(Bl{q} (+) Cf{q})");
  }

  TEST_CASE("side conditions are enforced") {
    // mon requires entailment between the arguments
    CHECK_THROWS_AS(instantiate(AxiomSchema::Mon, {bd("p | q"), bd("p")}), InputError);
    CHECK_NOTHROW(instantiate(AxiomSchema::Mon, {bd("p & q"), bd("p")}));
    // equiv requires interchangeable arguments
    CHECK_THROWS_AS(instantiate(AxiomSchema::Equiv, {bd("p"), bd("q")}), InputError);
    CHECK_NOTHROW(instantiate(AxiomSchema::Equiv, {bd("p"), bd("p & (p | q)")}));
    // arity mismatches
    CHECK_THROWS_AS(instantiate(AxiomSchema::Contr, {bd("p"), bd("q")}), InputError);
    CHECK_THROWS_AS(instantiate(AxiomSchema::Mon, {bd("p")}), InputError);
  }

  TEST_CASE("instances_for returns every admissible variant") {
    CHECK(instances_for(AxiomSchema::Neg, {bd("p")}).size() == 2);
    CHECK(instances_for(AxiomSchema::Equiv, {bd("p"), bd("q")}).empty());
    CHECK(instances_for(AxiomSchema::Equiv, {bd("p & q"), bd("q & p")}).size() == 4);
    CHECK(instances_for(AxiomSchema::Part2, {bd("p")}).size() == 24);
    CHECK(instances_for(AxiomSchema::Mon, {bd("p | q"), bd("p")}).empty());
  }

  TEST_CASE("the equivalence schema tracks inner equivalence semantically") {
    testgen::Rng rng(801);
    std::vector<std::string> vars = {"p", "q"};
    int hits = 0;
    for (int i = 0; i < 1000; ++i) {
      BDRef f = testgen::random_bd(rng, vars, 2);
      BDRef g = testgen::random_bd(rng, vars, 2);
      if (!bd_equiv(f, g)) continue;
      ++hits;
      auto rm = testgen::random_model(rng, 3, vars);
      for (const auto& inst : instances_for(AxiomSchema::Equiv, {f, g}))
        CHECK(eval_four(rm.model, rm.weights, inst) == Rat(1));
    }
    CHECK(hits > 30);
  }

  TEST_CASE("argument pools grow by depth and deduplicate") {
    auto pool0 = bd_pool({"p"}, 0);
    REQUIRE(pool0.size() == 1);
    CHECK(render(pool0[0]) == "p");

    auto pool1 = bd_pool({"p"}, 1);
    CHECK(pool1.size() == 2);  // p and -p; p&p etc. collapse into p

    auto pool2 = bd_pool({"p", "q"}, 1);
    CHECK(pool2.size() == 6);  // p, q, -p, -q, p&q, p|q
  }

  TEST_CASE("generated instance family is stable") {
    auto instances = generate_instances({"p", "q"}, 1);
    CHECK(instances.size() == 245);

    std::set<std::string> labels;
    for (const auto& inst : instances) {
      CHECK(labels.insert(inst.label).second);
      check_dialect(inst.formula, Dialect::Four);
    }
    // spot checks across schemas
    CHECK(labels.count("equiv[Bl](p, p)"));
    CHECK(labels.count("contr[1](p)"));
    CHECK(labels.count("neg[2](q)"));
    CHECK(labels.count("part1(p)"));
    CHECK(labels.count("part2[BlDbCfUc](p)"));
    CHECK(labels.count("mon(p, p | q)"));
    CHECK(labels.count("ex(p, q)"));

    CHECK_THROWS_AS(generate_instances({"p", "q"}, 1, 10), CapExceeded);
  }

  TEST_CASE("a sample of generated instances is semantically valid") {
    // the full audit runs in the acceptance gate; here one instance per
    // schema keeps the loop honest
    auto instances = generate_instances({"p"}, 1);
    std::set<std::string> seen;
    for (const auto& inst : instances) {
      std::string kind = schema_name(inst.schema);
      if (!seen.insert(kind).second) continue;
      CHECK_MESSAGE(decide_valid_four(inst.formula).affirmative, inst.label);
    }
    CHECK(seen.size() >= 5);
  }

  TEST_CASE("proof files parse") {
    const char* text =
        "# a tiny derivation\n"
        "1. ~Bl{p & -p} ; axiom contr(p)\n"
        "2. ~Bl{p & -p} -> (Bl{q} -> ~Bl{p & -p}) ; taut\n"
        "3. Bl{q} -> ~Bl{p & -p} ; mp 1 2\n";
    Proof p = parse_proof(text);
    CHECK(p.premises.empty());
    REQUIRE(p.lines.size() == 3);
    CHECK(p.lines[0].kind == JustKind::Axiom);
    CHECK(p.lines[0].schema == AxiomSchema::Contr);
    CHECK(p.lines[1].kind == JustKind::Taut);
    CHECK(p.lines[2].kind == JustKind::MP);
    CHECK(p.lines[2].ref1 == 1);
    CHECK(p.lines[2].ref2 == 2);

    CheckResult r = check_proof(p);
    CHECK(r.accepted);
    CHECK(r.failed_line == 0);

    OuterRef goal = four("Bl{q} -> ~Bl{p & -p}");
    CHECK(check_proof(p, &goal).accepted);
    OuterRef other = four("Bl{q}");
    CHECK_FALSE(check_proof(p, &other).accepted);
  }

  TEST_CASE("premises thread through and block necessitation") {
    const char* text =
        "premise Bl{p}\n"
        "1. Bl{p} ; premise 1\n"
        "2. !Bl{p} ; dnec 1\n";
    Proof p = parse_proof(text);
    CheckResult r = check_proof(p);
    CHECK_FALSE(r.accepted);
    CHECK(r.failed_line == 2);
    CHECK(r.reason.find("premise") != std::string::npos);

    // necessitation over a theorem line is fine
    const char* ok =
        "1. ~Bl{p & -p} ; axiom contr(p)\n"
        "2. !~Bl{p & -p} ; dnec 1\n";
    CHECK(check_proof(parse_proof(ok)).accepted);
  }

  TEST_CASE("proof rejections name the first bad line") {
    // modus ponens citing a non-implication
    const char* bad_mp =
        "1. ~Bl{p & -p} ; axiom contr(p)\n"
        "2. Bl{p} (+) Db{p} (+) Cf{p} (+) Uc{p} ; axiom part1(p)\n"
        "3. Bl{q} ; mp 1 2\n";
    CheckResult r = check_proof(parse_proof(bad_mp));
    CHECK_FALSE(r.accepted);
    CHECK(r.failed_line == 3);

    // axiom line that is not an instance
    const char* bad_axiom = "1. Bl{q} ; axiom contr(p)\n";
    r = check_proof(parse_proof(bad_axiom));
    CHECK_FALSE(r.accepted);
    CHECK(r.failed_line == 1);

    // taut line that is not an outer tautology
    const char* bad_taut = "1. Bl{p} -> Bl{q} ; taut\n";
    r = check_proof(parse_proof(bad_taut));
    CHECK_FALSE(r.accepted);
    CHECK(r.failed_line == 1);

    // forward reference
    const char* forward =
        "1. ~Bl{p & -p} -> (Bl{q} -> ~Bl{p & -p}) ; taut\n"
        "2. Bl{q} -> ~Bl{p & -p} ; mp 3 1\n"
        "3. ~Bl{p & -p} ; axiom contr(p)\n";
    r = check_proof(parse_proof(forward));
    CHECK_FALSE(r.accepted);
    CHECK(r.failed_line == 2);

    // empty proofs prove nothing
    CHECK_FALSE(check_proof(Proof{}).accepted);
  }

  TEST_CASE("proof parse errors") {
    CHECK_THROWS_AS(parse_proof("2. Bl{p} ; taut\n"), ParseError);           // bad numbering
    CHECK_THROWS_AS(parse_proof("1. Bl{p} ; axiom nope(p)\n"), ParseError);  // unknown schema
    CHECK_THROWS_AS(parse_proof("1. Bl{p}\n"), ParseError);                  // missing justification
    CHECK_THROWS_AS(parse_proof("1. Bl{p} ; mp one two\n"), ParseError);
    CHECK_THROWS_AS(parse_proof("premise Bl{p}\n1. -Bl{p} ; premise 1\n"), InputError);
  }

  TEST_CASE("accepted proofs have semantically valid goals") {
    const char* text =
        "1. ~Bl{p & -p} ; axiom contr(p)\n"
        "2. ~Bl{p & -p} -> (Bl{q} -> ~Bl{p & -p}) ; taut\n"
        "3. Bl{q} -> ~Bl{p & -p} ; mp 1 2\n";
    Proof p = parse_proof(text);
    REQUIRE(check_proof(p).accepted);
    CHECK(decide_valid_four(p.lines.back().formula).affirmative);

    // with premises: the goal follows from the premise set
    const char* with_premise =
        "premise !Cf{p}\n"
        "1. !Cf{p} ; premise 1\n";
    Proof q = parse_proof(with_premise);
    REQUIRE(check_proof(q).accepted);
    CHECK(decide_entails_four(q.premises, q.lines.back().formula).affirmative);
  }
}
