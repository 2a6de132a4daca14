#include <bdluk/errors.hpp>
#include <bdluk/luk_eval.hpp>
#include <bdluk/syntax.hpp>
#include <bdluk/tableau.hpp>

#include <doctest.h>

#include <map>
#include <string>
#include <vector>

#include "support/generators.hpp"

using namespace bdluk;

namespace {

OuterRef luk(const char* s) { return parse_outer(s, Dialect::PlainLuk); }

const std::vector<const char*>& closed_corpus() {
  static const std::vector<const char*> corpus = {
      // implication axioms
      "a -> (b -> a)",
      "(a -> b) -> ((b -> c) -> (a -> c))",
      "((a -> b) -> b) -> ((b -> a) -> a)",
      "(~a -> ~b) -> (b -> a)",
      // crispness axioms
      "!a -> a",
      "!a -> !!a",
      "!(a | b) -> (!a | !b)",
      "!a | ~!a",
      // negation commutation laws
      "-~-a <-> --~a",
      "-~~a <-> ~-~a",
      "-~!a <-> !-~a",
      "-~(a -> b) <-> (-~a -> -~b)",
  };
  return corpus;
}

// pair valuation of the free atoms appearing in the corpus formulas
PairValue eval_on(const OuterRef& f, const std::map<std::string, PairValue>& vals) {
  return eval_with_atoms(f, [&](const OuterRef& atom) { return vals.at(render(atom)); });
}

}  // namespace

TEST_SUITE("tableau") {
  TEST_CASE("tau translates atomic labels") {
    OuterRef a = free_atom("a");
    LinConstraint c1 = tau({a, Side::One, Dir::Le, AffineTerm::of_const(Rat(2) / 3)});
    CHECK(constraint_to_string(c1) == "L(a) <= 2/3");
    LinConstraint c2 = tau({a, Side::Two, Dir::Ge, AffineTerm::of_var("j1")});
    CHECK(constraint_to_string(c2) == "j1 <= R(a)");
    LinConstraint c3 = tau({a, Side::Two, Dir::Le, AffineTerm::of_const(Rat(0))});
    CHECK(constraint_to_string(c3) == "R(a) <= 0");
  }

  TEST_CASE("single rule applications") {
    OuterRef a = free_atom("a");
    OuterRef b = free_atom("b");

    // weak negation flips the direction around one
    {
      Branch root;
      root.add({luk_neg(a), Side::One, Dir::Le, AffineTerm::of_const(Rat(1) / 3)});
      auto kids = apply_rule(root, 0);
      REQUIRE(kids.size() == 1);
      REQUIRE(kids[0].open.empty());
      REQUIRE(kids[0].constraints.size() == 1);
      CHECK(constraint_to_string(kids[0].constraints[0]) == "2/3 <= L(a)");
    }

    // the crispness operator branches into a degenerate and a live case
    {
      Branch root;
      root.add({delta(a), Side::One, Dir::Le, AffineTerm::of_var("i")});
      auto kids = apply_rule(root, 0);
      REQUIRE(kids.size() == 2);
      REQUIRE(kids[0].constraints.size() == 1);
      CHECK(constraint_to_string(kids[0].constraints[0]) == "1 <= i");
      REQUIRE(kids[1].constraints.size() == 2);
      CHECK(constraint_to_string(kids[1].constraints[0]) == "L(a) <= j1");
      CHECK(constraint_to_string(kids[1].constraints[1]) == "j1 < 1");
    }

    // implication from below introduces one fresh bound
    {
      Branch root;
      root.add({implies(a, b), Side::One, Dir::Ge, AffineTerm::of_var("i")});
      auto kids = apply_rule(root, 0);
      REQUIRE(kids.size() == 1);
      REQUIRE(kids[0].constraints.size() == 2);
      CHECK(constraint_to_string(kids[0].constraints[0]) == "L(a) <= 1 - i + j1");
      CHECK(constraint_to_string(kids[0].constraints[1]) == "j1 <= L(b)");
    }

    // the paraconsistent negation swaps coordinates
    {
      Branch root;
      root.add({par_neg(a), Side::One, Dir::Le, AffineTerm::of_const(Rat(1) / 2)});
      auto kids = apply_rule(root, 0);
      REQUIRE(kids.size() == 1);
      REQUIRE(kids[0].constraints.size() == 1);
      CHECK(constraint_to_string(kids[0].constraints[0]) == "R(a) <= 1/2");
    }
  }

  TEST_CASE("rule-local soundness across all sixteen rules") {
    // For every premise satisfied by a pair valuation, some conclusion branch
    // is satisfied by the same valuation for some value of the fresh bound.
    testgen::Rng rng(601);
    OuterRef a = free_atom("a");
    OuterRef b = free_atom("b");
    std::vector<OuterRef> shapes = {luk_neg(a), par_neg(a), delta(a), implies(a, b)};

    int checked = 0;
    for (const auto& shape : shapes) {
      for (Side side : {Side::One, Side::Two}) {
        for (Dir dir : {Dir::Le, Dir::Ge}) {
          for (int trial = 0; trial < 1000; ++trial) {
            PairValue va{rng.unit_rat(), rng.unit_rat()};
            PairValue vb{rng.unit_rat(), rng.unit_rat()};
            std::map<std::string, PairValue> vals = {{"a", va}, {"b", vb}};
            Rat val = [&] {
              PairValue pv = eval_on(shape, vals);
              return side == Side::One ? pv.truth : pv.falsity;
            }();
            // choose a bound that satisfies the premise
            Rat slack = rng.unit_rat();
            Rat t = dir == Dir::Le ? Rat(val + slack * (1 - val)) : Rat(val - slack * val);

            Branch root;
            root.add({shape, side, dir, AffineTerm::of_const(t)});
            REQUIRE(root.open.size() == 1);
            auto kids = apply_rule(root, 0);
            REQUIRE(!kids.empty());
            REQUIRE(kids.size() <= 2);

            std::vector<Rat> candidates = {Rat(0), Rat(1), t,      va.truth,
                                           va.falsity,     vb.truth, vb.falsity};
            bool some_branch_ok = false;
            for (const auto& kid : kids) {
              REQUIRE(kid.open.empty());  // atomic operands close out immediately
              for (const Rat& j : candidates) {
                if (j < 0 || j > 1) continue;
                std::map<std::string, Rat> asg = {{"L(a)", va.truth}, {"R(a)", va.falsity},
                                                  {"L(b)", vb.truth}, {"R(b)", vb.falsity},
                                                  {"j1", j}};
                bool all_hold = true;
                for (const auto& c : kid.constraints)
                  if (!c.holds(asg)) {
                    all_hold = false;
                    break;
                  }
                if (all_hold) {
                  some_branch_ok = true;
                  break;
                }
              }
              if (some_branch_ok) break;
            }
            REQUIRE_MESSAGE(some_branch_ok,
                            labelled_to_string({shape, side, dir, AffineTerm::of_const(t)}));
            ++checked;
          }
        }
      }
    }
    CHECK(checked == 16000);
  }

  TEST_CASE("validity corpus closes") {
    for (const char* s : closed_corpus()) {
      TableauResult r = prove_luk_valid(luk(s));
      REQUIRE_MESSAGE(r.closed, s);
      CHECK(!r.closed_leaves.empty());
    }
  }

  TEST_CASE("closed formulas hold under random sampling") {
    testgen::Rng rng(602);
    for (const char* s : closed_corpus()) {
      OuterRef f = luk(s);
      for (int i = 0; i < 1000; ++i) {
        std::map<std::string, PairValue> vals;
        for (const char* atom : {"a", "b", "c"})
          vals[atom] = {rng.unit_rat(), rng.unit_rat()};
        CHECK(eval_on(f, vals).truth == Rat(1));
      }
    }
  }

  TEST_CASE("non-valid formulas open with verified witnesses") {
    for (const char* s : {"a", "(a (+) a) -> a", "a | ~a", "!a", "a -> b", "a <-> ~a"}) {
      OuterRef f = luk(s);
      TableauResult r = prove_luk_valid(f);
      REQUIRE_MESSAGE(!r.closed, s);
      // the assignment refutes the formula on the first coordinate
      PairValue v = eval_on(f, [&] {
        std::map<std::string, PairValue> vals;
        for (const auto& [name, atom] : r.atom_values) vals[name] = atom;
        // atoms the branch never constrained default to zero
        for (const char* atom : {"a", "b"})
          if (!vals.count(atom)) vals[atom] = {Rat(0), Rat(0)};
        return vals;
      }());
      CHECK(v.truth < 1);
    }
  }

  TEST_CASE("closure certificates are genuinely infeasible") {
    TableauResult r = prove_luk_valid(luk("a -> (b -> a)"));
    REQUIRE(r.closed);
    for (const auto& leaf : r.closed_leaves) {
      if (leaf.by_propagation) continue;  // interval contradictions carry no system
      CHECK_FALSE(feasible(leaf.system, {}).feasible);
    }
  }

  TEST_CASE("hand-built saturation roots") {
    // root {a <= c, c < 1} stays open
    {
      Branch root;
      root.lp_vars.insert("c");
      root.add({free_atom("a"), Side::One, Dir::Le, AffineTerm::of_var("c")});
      root.add_constraint({AffineTerm::of_var("c"), Rel::Lt, AffineTerm::of_const(Rat(1))});
      auto leaves = saturate(root, {});
      REQUIRE(leaves.size() == 1);
      CHECK_FALSE(leaves[0].refuted);
      Feasibility f = feasible(leaves[0].constraints, {});
      CHECK(f.feasible);
    }

    // root {!a >= 1} splits into a refuted branch and a live one
    {
      Branch root;
      root.add({delta(free_atom("a")), Side::One, Dir::Ge, AffineTerm::of_const(Rat(1))});
      auto leaves = saturate(root, {});
      REQUIRE(leaves.size() == 2);
      int live = 0;
      for (const auto& leaf : leaves) {
        bool closed = leaf.refuted || !feasible(leaf.constraints, {}).feasible;
        if (!closed) ++live;
      }
      CHECK(live == 1);
    }
  }

  TEST_CASE("negation-free runs never touch the second coordinate") {
    Branch root;
    root.one_sided = true;
    CHECK_THROWS_AS(root.add({free_atom("a"), Side::Two, Dir::Le, AffineTerm::of_const(Rat(1))}),
                    std::logic_error);
    // inputs with the paraconsistent negation do use it, via the swap rule
    TableauResult r = prove_luk_valid(luk("-~-a <-> --~a"));
    CHECK(r.closed);
  }

  TEST_CASE("branch budget raises instead of deciding") {
    CHECK_THROWS_AS(prove_luk_valid(luk("((a -> b) -> b) -> ((b -> a) -> a)"), {3}),
                    CapExceeded);
  }

  TEST_CASE("dump output names every leaf") {
    std::string dump = tableau_dump(luk("!a -> a"));
    CHECK(dump.find("closed") != std::string::npos);
    CHECK(dump.find("!a -> a <=1 c") != std::string::npos);
    std::string open_dump = tableau_dump(luk("a | ~a"));
    CHECK(open_dump.find("open") != std::string::npos);
  }
}
