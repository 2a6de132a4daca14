#include <bdluk/bd_semantics.hpp>
#include <bdluk/errors.hpp>
#include <bdluk/luk_eval.hpp>
#include <bdluk/syntax.hpp>

#include <doctest.h>

#include <vector>

#include "support/generators.hpp"

using namespace bdluk;

namespace {

struct Golden {
  BDModel model;
  WorldWeights weights;
  Golden()
      : model({"w0", "w1"}, {{"w0", {"p"}}}, {{"w0", {"p"}}, {"w1", {"p", "q"}}}),
        weights(model, {{"w0", Rat(2) / Rat(3)}, {"w1", Rat(1) / Rat(3)}}) {}
};

std::vector<Rat> unit_grid() {
  std::vector<Rat> g;
  for (int d = 1; d <= 4; ++d)
    for (int k = 0; k <= d; ++k) g.push_back(Rat(k) / Rat(d));
  return g;
}

}  // namespace

TEST_SUITE("luk_eval") {
  TEST_CASE("scalar connectives against their closed forms") {
    CHECK(luk_apply(LukOp::Plus, Rat(1) / 2, Rat(2) / 3) == Rat(1));
    CHECK(luk_apply(LukOp::Implies, Rat(2) / 3, Rat(1) / 3) == Rat(2) / 3);
    CHECK(luk_apply(LukOp::Delta, Rat(2) / 3) == Rat(0));
    CHECK(luk_apply(LukOp::Delta, Rat(1)) == Rat(1));
    for (const Rat& a : unit_grid()) {
      for (const Rat& b : unit_grid()) {
        CHECK(luk_apply(LukOp::Neg, a) == 1 - a);
        CHECK(luk_apply(LukOp::And, a, b) == std::min(a, b));
        CHECK(luk_apply(LukOp::Or, a, b) == std::max(a, b));
        CHECK(luk_apply(LukOp::Implies, a, b) == std::min(Rat(1), Rat(1 - a + b)));
        CHECK(luk_apply(LukOp::Strong, a, b) == std::max(Rat(0), Rat(a + b - 1)));
        CHECK(luk_apply(LukOp::Plus, a, b) == std::min(Rat(1), Rat(a + b)));
        CHECK(luk_apply(LukOp::Minus, a, b) == std::max(Rat(0), Rat(a - b)));
      }
    }
  }

  TEST_CASE("derived scalar connectives reduce to the core") {
    testgen::Rng rng(301);
    for (int i = 0; i < 10000; ++i) {
      Rat a = rng.unit_rat(24), b = rng.unit_rat(24);
      Rat impl_ab = luk_apply(LukOp::Implies, a, b);
      CHECK(luk_apply(LukOp::Or, a, b) == luk_apply(LukOp::Implies, impl_ab, b));
      CHECK(luk_apply(LukOp::And, a, b) ==
            luk_apply(LukOp::Neg, luk_apply(LukOp::Or, luk_apply(LukOp::Neg, a),
                                            luk_apply(LukOp::Neg, b))));
      CHECK(luk_apply(LukOp::Plus, a, b) ==
            luk_apply(LukOp::Implies, luk_apply(LukOp::Neg, a), b));
      CHECK(luk_apply(LukOp::Strong, a, b) ==
            luk_apply(LukOp::Neg, luk_apply(LukOp::Implies, a, luk_apply(LukOp::Neg, b))));
      CHECK(luk_apply(LukOp::Minus, a, b) ==
            luk_apply(LukOp::Strong, a, luk_apply(LukOp::Neg, b)));
      CHECK(luk_apply(LukOp::Iff, a, b) ==
            luk_apply(LukOp::Strong, impl_ab, luk_apply(LukOp::Implies, b, a)));
    }
  }

  TEST_CASE("pair connectives pins") {
    CHECK(pair_apply(PairOp::ParNeg, {Rat(2) / 3, Rat(1)}) == PairValue{Rat(1), Rat(2) / 3});
    CHECK(pair_apply(PairOp::Delta, {Rat(1), Rat(1) / 3}) == PairValue{Rat(1), Rat(1)});
    CHECK(pair_apply(PairOp::Delta, {Rat(1), Rat(0)}) == PairValue{Rat(1), Rat(0)});
    CHECK(pair_apply(PairOp::Implies, {Rat(1), Rat(0)}, {Rat(1) / 2, Rat(1) / 3}) ==
          PairValue{Rat(1) / 2, Rat(1) / 3});
  }

  TEST_CASE("pair connectives: coordinates move independently and dually") {
    testgen::Rng rng(302);
    for (int i = 0; i < 10000; ++i) {
      PairValue a{rng.unit_rat(), rng.unit_rat()};
      PairValue b{rng.unit_rat(), rng.unit_rat()};

      // paraconsistent negation swaps the coordinates; twice is identity
      CHECK(pair_apply(PairOp::ParNeg, pair_apply(PairOp::ParNeg, a)) == a);

      // first coordinates follow the scalar algebra
      CHECK(pair_apply(PairOp::Implies, a, b).truth ==
            luk_apply(LukOp::Implies, a.truth, b.truth));
      CHECK(pair_apply(PairOp::And, a, b).truth == luk_apply(LukOp::And, a.truth, b.truth));
      CHECK(pair_apply(PairOp::Plus, a, b).truth == luk_apply(LukOp::Plus, a.truth, b.truth));

      // second coordinates follow the dual connective
      CHECK(pair_apply(PairOp::Implies, a, b).falsity ==
            luk_apply(LukOp::Minus, b.falsity, a.falsity));
      CHECK(pair_apply(PairOp::And, a, b).falsity == luk_apply(LukOp::Or, a.falsity, b.falsity));
      CHECK(pair_apply(PairOp::Or, a, b).falsity == luk_apply(LukOp::And, a.falsity, b.falsity));
      CHECK(pair_apply(PairOp::Plus, a, b).falsity ==
            luk_apply(LukOp::Strong, a.falsity, b.falsity));
      CHECK(pair_apply(PairOp::Strong, a, b).falsity ==
            luk_apply(LukOp::Plus, a.falsity, b.falsity));

      // derived pair connectives reduce to the pair core
      CHECK(pair_apply(PairOp::Or, a, b) ==
            pair_apply(PairOp::Implies, pair_apply(PairOp::Implies, a, b), b));
      CHECK(pair_apply(PairOp::And, a, b) ==
            pair_apply(PairOp::LukNeg, pair_apply(PairOp::Or, pair_apply(PairOp::LukNeg, a),
                                                  pair_apply(PairOp::LukNeg, b))));
      CHECK(pair_apply(PairOp::Plus, a, b) ==
            pair_apply(PairOp::Implies, pair_apply(PairOp::LukNeg, a), b));
      CHECK(pair_apply(PairOp::Strong, a, b) ==
            pair_apply(PairOp::LukNeg,
                       pair_apply(PairOp::Implies, a, pair_apply(PairOp::LukNeg, b))));
      CHECK(pair_apply(PairOp::Minus, a, b) ==
            pair_apply(PairOp::Strong, a, pair_apply(PairOp::LukNeg, b)));
      CHECK(pair_apply(PairOp::Iff, a, b) ==
            pair_apply(PairOp::Strong, pair_apply(PairOp::Implies, a, b),
                       pair_apply(PairOp::Implies, b, a)));
    }
  }

  TEST_CASE("weighted measure pins on the golden model") {
    Golden g;
    CHECK(measure_of(g.model, g.weights, parse_bd("p | q"), ExtensionKind::Plus) == Rat(2) / 3);
    CHECK(measure_of(g.model, g.weights, parse_bd("p"), ExtensionKind::Minus) == Rat(1));
    CHECK(measure_of(g.model, g.weights, parse_bd("p"), ExtensionKind::FalseOnly) == Rat(1) / 3);
    CHECK(measure_of(g.model, g.weights, parse_bd("p"), ExtensionKind::Both) == Rat(2) / 3);
  }

  TEST_CASE("golden evaluations") {
    Golden g;
    auto pm = [&](const char* s) { return eval_pm(g.model, g.weights, parse_outer(s, Dialect::PM)); };
    auto four = [&](const char* s) {
      return eval_four(g.model, g.weights, parse_outer(s, Dialect::Four));
    };
    CHECK(pm("Pr{p | q}") == PairValue{Rat(2) / 3, Rat(1) / 3});
    CHECK(pm("Pr{p}") == PairValue{Rat(2) / 3, Rat(1)});
    CHECK(pm("-Pr{p}") == PairValue{Rat(1), Rat(2) / 3});
    CHECK(pm("Pr{p} -> Pr{p | q}") == PairValue{Rat(1), Rat(0)});
    CHECK(four("Bl{p | q}") == Rat(2) / 3);
    CHECK(four("Db{p | q}") == Rat(1) / 3);
    CHECK(four("Cf{p | q}") == Rat(0));
    CHECK(four("Uc{p | q}") == Rat(0));
    CHECK(four("Bl{p}") == Rat(0));
    CHECK(four("Uc{p}") == Rat(0));
    CHECK(four("Cf{p}") == Rat(2) / 3);
    CHECK(four("Db{p}") == Rat(1) / 3);
    CHECK(four("Bl{p} (+) Db{p} (+) Cf{p} (+) Uc{p}") == Rat(1));
  }

  TEST_CASE("evaluation enforces dialects") {
    Golden g;
    CHECK_THROWS_AS(eval_pm(g.model, g.weights, parse_outer("Bl{p}", Dialect::Four)),
                    DialectError);
    CHECK_THROWS_AS(eval_four(g.model, g.weights, parse_outer("Pr{p}", Dialect::PM)),
                    DialectError);
  }

  TEST_CASE("weights validate") {
    Golden g;
    CHECK_THROWS_AS(WorldWeights(g.model, {{"w0", Rat(1)}}), InputError);  // missing world
    CHECK_THROWS_AS(WorldWeights(g.model, {{"w0", Rat(1)}, {"w1", Rat(1)}}), InputError);
    CHECK_THROWS_AS(WorldWeights(g.model, {{"w0", Rat(2)}, {"w1", Rat(-1)}}), InputError);
    CHECK_NOTHROW(WorldWeights(g.model, {{"w0", Rat(1)}, {"w1", Rat(0)}}));
  }

  TEST_CASE("partition and bridge identities on random models") {
    testgen::Rng rng(303);
    std::vector<std::string> vars = {"p", "q"};
    for (int i = 0; i < 400; ++i) {
      auto rm = testgen::random_model(rng, 4, vars);
      BDRef f = testgen::random_bd(rng, vars, 3);
      Rat b = measure_of(rm.model, rm.weights, f, ExtensionKind::TrueOnly);
      Rat d = measure_of(rm.model, rm.weights, f, ExtensionKind::FalseOnly);
      Rat c = measure_of(rm.model, rm.weights, f, ExtensionKind::Both);
      Rat u = measure_of(rm.model, rm.weights, f, ExtensionKind::Neither);
      CHECK(b + d + c + u == Rat(1));
      CHECK(measure_of(rm.model, rm.weights, f, ExtensionKind::Plus) == b + c);
      CHECK(measure_of(rm.model, rm.weights, f, ExtensionKind::Minus) == d + c);
    }
  }

  TEST_CASE("eval_pm agrees with atom-callback evaluation") {
    testgen::Rng rng(304);
    std::vector<std::string> vars = {"p", "q"};
    for (int i = 0; i < 300; ++i) {
      auto rm = testgen::random_model(rng, 4, vars);
      OuterRef f = testgen::random_outer_pm(rng, vars, 4, 2);
      PairValue direct = eval_pm(rm.model, rm.weights, f);
      PairValue via_atoms = eval_with_atoms(f, [&](const OuterRef& atom) {
        REQUIRE(atom->kind == OuterKind::ModalAtom);
        return PairValue{measure_of(rm.model, rm.weights, atom->body, ExtensionKind::Plus),
                         measure_of(rm.model, rm.weights, atom->body, ExtensionKind::Minus)};
      });
      CHECK(direct == via_atoms);
    }
  }

  TEST_CASE("weight-induced tables pass both audits") {
    testgen::Rng rng(305);
    std::vector<std::string> vars = {"p", "q"};
    std::vector<BDRef> probe;
    for (const char* s : {"p", "q", "-p", "-q", "p & q", "p | q", "-(p & q)", "-p | q"})
      probe.push_back(parse_bd(s));
    for (int i = 0; i < 200; ++i) {
      auto rm = testgen::random_model(rng, 4, vars);
      SetMeasureTable tpm = induced_table(rm.weights, needed_sets_pm(rm.model, probe));
      CHECK(verify_pm_axioms(rm.model, tpm, probe).empty());
      SetMeasureTable tf = induced_table(rm.weights, needed_sets_four(rm.model, probe));
      CHECK(verify_four_axioms(rm.model, tf, probe).empty());
    }
  }

  TEST_CASE("corrupted tables are caught") {
    // three worlds so that |p|+, |q|+ and |p v q|+ are distinct sets
    BDModel m({"w0", "w1", "w2"}, {{"w0", {"p"}}, {"w2", {"q"}}}, {{"w1", {"p", "q"}}});
    WorldWeights w(m, {{"w0", Rat(1) / 3}, {"w1", Rat(1) / 3}, {"w2", Rat(1) / 3}});
    std::vector<BDRef> probe = {parse_bd("p"), parse_bd("q"), parse_bd("p | q"),
                                parse_bd("p & q")};

    SetMeasureTable t = induced_table(w, needed_sets_pm(m, probe));
    t.set({"w0", "w2"}, Rat(0));  // |p v q|+ loses its mass
    auto viols = verify_pm_axioms(m, t, probe);
    REQUIRE_FALSE(viols.empty());
    bool saw_mon = false, saw_ex = false;
    for (const auto& v : viols) {
      if (v.axiom == "mon") saw_mon = true;
      if (v.axiom == "ex") saw_ex = true;
    }
    CHECK(saw_mon);
    CHECK(saw_ex);

    SetMeasureTable tf = induced_table(w, needed_sets_four(m, probe));
    tf.set({}, Rat(1) / 2);  // the empty set (conflict-free regions) gains mass
    auto viols4 = verify_four_axioms(m, tf, probe);
    REQUIRE_FALSE(viols4.empty());
    bool saw_contr = false;
    for (const auto& v : viols4)
      if (v.axiom == "contr") saw_contr = true;
    CHECK(saw_contr);
  }

  TEST_CASE("dual model: golden pin") {
    Golden g;
    std::set<std::string> vars = {"p", "q"};
    auto [dm, dw] = dual_model(g.model, g.weights, &vars);
    // w0: the p-glut becomes a gap, the q-gap becomes a glut
    CHECK(supports(dm, "w0", parse_bd("p")) == Supports{false, false});
    CHECK(supports(dm, "w0", parse_bd("q")) == Supports{true, true});
    // w1: classical values stay put
    CHECK(supports(dm, "w1", parse_bd("p")) == Supports{false, true});
    CHECK(supports(dm, "w1", parse_bd("q")) == Supports{false, true});
    CHECK(eval_pm(dm, dw, parse_outer("Pr{p}", Dialect::PM)) == PairValue{Rat(0), Rat(1) / 3});
  }

  TEST_CASE("dual model: involution and the two-coordinate swap") {
    testgen::Rng rng(306);
    std::vector<std::string> var_list = {"p", "q"};
    std::set<std::string> vars(var_list.begin(), var_list.end());
    for (int i = 0; i < 500; ++i) {
      auto rm = testgen::random_model(rng, 4, var_list);
      auto [dm, dw] = dual_model(rm.model, rm.weights, &vars);
      auto [ddm, ddw] = dual_model(dm, dw, &vars);
      for (const auto& w : rm.model.worlds)
        for (const auto& v : var_list)
          CHECK(supports(ddm, w, bd_var(v)) == supports(rm.model, w, bd_var(v)));

      OuterRef f = testgen::random_outer_pm(rng, var_list, 3, 2);
      PairValue e = eval_pm(rm.model, rm.weights, f);
      PairValue ed = eval_pm(dm, dw, f);
      CHECK(ed.truth == 1 - e.falsity);
      CHECK(ed.falsity == 1 - e.truth);
    }
  }

  TEST_CASE("negation commutation laws evaluate to designated pairs") {
    testgen::Rng rng(307);
    std::vector<std::string> vars = {"p", "q"};
    for (int i = 0; i < 1000; ++i) {
      auto rm = testgen::random_model(rng, 3, vars);
      OuterRef a = testgen::random_outer_pm(rng, vars, 2, 2);
      OuterRef b = testgen::random_outer_pm(rng, vars, 2, 2);
      std::vector<OuterRef> laws = {
          iff(par_neg(luk_neg(par_neg(a))), par_neg(par_neg(luk_neg(a)))),
          iff(par_neg(luk_neg(luk_neg(a))), luk_neg(par_neg(luk_neg(a)))),
          iff(par_neg(luk_neg(delta(a))), delta(par_neg(luk_neg(a)))),
          iff(par_neg(luk_neg(implies(a, b))), implies(par_neg(luk_neg(a)), par_neg(luk_neg(b)))),
      };
      for (const auto& law : laws) {
        PairValue v = eval_pm(rm.model, rm.weights, law);
        CHECK(v == PairValue{Rat(1), Rat(0)});
      }
    }
  }
}
