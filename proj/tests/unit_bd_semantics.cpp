#include <bdluk/bd_semantics.hpp>
#include <bdluk/errors.hpp>
#include <bdluk/syntax.hpp>

#include <doctest.h>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "support/generators.hpp"

using namespace bdluk;

namespace {

// Example from the golden suite: w0 has a p-glut and a q-gap, w1 rejects both.
BDModel example_model() {
  return BDModel({"w0", "w1"}, {{"w0", {"p"}}},
                 {{"w0", {"p"}}, {"w1", {"p", "q"}}});
}

std::set<std::string> to_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_SUITE("bd_semantics") {
  TEST_CASE("model validation") {
    CHECK_THROWS_AS(BDModel({}, {}, {}), InputError);                       // empty world set
    CHECK_THROWS_AS(BDModel({"w0", "w0"}, {}, {}), InputError);             // duplicate id
    CHECK_THROWS_AS(BDModel({"w0"}, {{"w9", {"p"}}}, {}), InputError);      // unknown support key
    CHECK_NOTHROW(BDModel({"w0"}, {}, {}));                                 // all-gap world
  }

  TEST_CASE("supports on the example model") {
    BDModel m = example_model();
    CHECK(supports(m, "w0", parse_bd("p")) == Supports{true, true});
    CHECK(supports(m, "w0", parse_bd("q")) == Supports{false, false});
    CHECK(supports(m, "w1", parse_bd("p | q")) == Supports{false, true});
    CHECK(supports(m, "w0", parse_bd("-p")) == Supports{true, true});
    CHECK(supports(m, "w0", parse_bd("p & q")) == Supports{false, true});
    CHECK(supports(m, "w0", parse_bd("p | q")) == Supports{true, false});
    CHECK_THROWS_AS(supports(m, "nope", parse_bd("p")), InputError);
  }

  TEST_CASE("extensions on the example model") {
    BDModel m = example_model();
    CHECK(extension(m, parse_bd("p"), ExtensionKind::Both) == std::vector<std::string>{"w0"});
    CHECK(extension(m, parse_bd("p | q"), ExtensionKind::Plus) == std::vector<std::string>{"w0"});
    CHECK(extension(m, parse_bd("p | q"), ExtensionKind::Minus) == std::vector<std::string>{"w1"});
    CHECK(extension(m, parse_bd("p"), ExtensionKind::Minus) ==
          std::vector<std::string>({"w0", "w1"}));
    CHECK(extension(m, parse_bd("q"), ExtensionKind::Neither) == std::vector<std::string>{"w0"});
  }

  TEST_CASE("the four regions partition the world set") {
    testgen::Rng rng(201);
    std::vector<std::string> vars = {"p", "q"};
    for (int i = 0; i < 300; ++i) {
      auto rm = testgen::random_model(rng, 4, vars);
      BDRef f = testgen::random_bd(rng, vars, 3);
      auto b = to_set(extension(rm.model, f, ExtensionKind::TrueOnly));
      auto d = to_set(extension(rm.model, f, ExtensionKind::FalseOnly));
      auto c = to_set(extension(rm.model, f, ExtensionKind::Both));
      auto u = to_set(extension(rm.model, f, ExtensionKind::Neither));
      std::set<std::string> all;
      std::size_t total = b.size() + d.size() + c.size() + u.size();
      for (const auto* part : {&b, &d, &c, &u}) all.insert(part->begin(), part->end());
      CHECK(all == to_set(rm.model.worlds));
      CHECK(total == rm.model.worlds.size());
    }
  }

  TEST_CASE("entailment pins") {
    CHECK(bd_entails(parse_bd("p"), parse_bd("p | q")));
    CHECK_FALSE(bd_entails(parse_bd("p & -p"), parse_bd("q")));
    CHECK(bd_entails(parse_bd("p & q"), parse_bd("q & p")));
    CHECK_FALSE(bd_entails(parse_bd("p"), parse_bd("q | -q")));
    CHECK(bd_equiv(parse_bd("p"), parse_bd("p & (p | q)")));
    CHECK(bd_equiv(parse_bd("p"), parse_bd("--p")));
    CHECK_FALSE(bd_equiv(parse_bd("p | -p"), parse_bd("q | -q")));
  }

  TEST_CASE("entailment needs both inclusions") {
    // truth support carries left to right, falsity support right to left;
    // losing either direction breaks the sequent
    CHECK_FALSE(bd_entails(parse_bd("p | q"), parse_bd("p")));
    CHECK(bd_entails(parse_bd("p & q"), parse_bd("p")));
    // same truth direction, failing falsity direction: -p |/= -(p & q)
    // would need falsity of -(p & q), i.e. truth of p & q, to carry to p
    CHECK(bd_entails(parse_bd("-(p & q)"), parse_bd("-p | -q")));
  }

  TEST_CASE("one-world reduction matches valuation semantics") {
    // BD is truth-functional: entailment over all <=2-world models over
    // {p, q} agrees with the 16-valuation enumeration
    testgen::Rng rng(202);
    std::vector<std::string> vars = {"p", "q"};
    for (int i = 0; i < 120; ++i) {
      BDRef f = testgen::random_bd(rng, vars, 3);
      BDRef g = testgen::random_bd(rng, vars, 3);
      bool by_valuations = bd_entails(f, g);

      // enumerate every model with one or two worlds over {p, q}
      bool by_models = true;
      for (int worlds = 1; worlds <= 2 && by_models; ++worlds) {
        int cells = 2 * worlds;  // (var, world) pairs
        for (int mask = 0; mask < (1 << (2 * cells)) && by_models; ++mask) {
          std::vector<std::string> ids;
          for (int w = 0; w < worlds; ++w) ids.push_back("w" + std::to_string(w));
          std::map<std::string, std::set<std::string>> vp, vm;
          int bit = 0;
          for (int w = 0; w < worlds; ++w) {
            for (const auto& v : vars) {
              if (mask & (1 << bit++)) vp[ids[static_cast<std::size_t>(w)]].insert(v);
              if (mask & (1 << bit++)) vm[ids[static_cast<std::size_t>(w)]].insert(v);
            }
          }
          BDModel m(ids, vp, vm);
          auto plus_f = to_set(extension(m, f, ExtensionKind::Plus));
          auto plus_g = to_set(extension(m, g, ExtensionKind::Plus));
          auto minus_f = to_set(extension(m, f, ExtensionKind::Minus));
          auto minus_g = to_set(extension(m, g, ExtensionKind::Minus));
          bool incl = std::includes(plus_g.begin(), plus_g.end(), plus_f.begin(), plus_f.end()) &&
                      std::includes(minus_f.begin(), minus_f.end(), minus_g.begin(), minus_g.end());
          if (!incl) by_models = false;
        }
      }
      REQUIRE_MESSAGE(by_valuations == by_models, render(f), " vs ", render(g));
    }
  }

  TEST_CASE("De Morgan and double negation as equivalences") {
    testgen::Rng rng(203);
    std::vector<std::string> vars = {"p", "q", "r"};
    for (int i = 0; i < 200; ++i) {
      BDRef f = testgen::random_bd(rng, vars, 3);
      BDRef g = testgen::random_bd(rng, vars, 3);
      CHECK(bd_equiv(bd_neg(bd_and(f, g)), bd_or(bd_neg(f), bd_neg(g))));
      CHECK(bd_equiv(bd_neg(bd_or(f, g)), bd_and(bd_neg(f), bd_neg(g))));
      CHECK(bd_equiv(bd_neg(bd_neg(f)), f));
      CHECK(bd_equiv(bd_nnf(f), f));
    }
  }

  TEST_CASE("no tautologies: the all-gap valuation supports nothing") {
    testgen::Rng rng(204);
    std::vector<std::string> vars = {"p"};
    for (int i = 0; i < 200; ++i) {
      BDRef f = testgen::random_bd(rng, vars, 3);
      CHECK(eval_bd({}, f) == Supports{false, false});
      // dually, the all-glut valuation supports everything both ways
      BDValuation glut{{"p", {true, true}}};
      CHECK(eval_bd(glut, f) == Supports{true, true});
    }
  }

  TEST_CASE("variable cap raises instead of guessing") {
    BDRef f = parse_bd("a1");
    BDRef g = f;
    for (int i = 2; i <= 14; ++i) g = bd_or(g, bd_var("a" + std::to_string(i)));
    CHECK_THROWS_AS(bd_entails(f, g), CapExceeded);
    CHECK_NOTHROW(bd_entails(f, g, 14));
  }

  TEST_CASE("model files round-trip") {
    std::string text =
        "# example\n"
        "world w0 { +p -p }\n"
        "world w1 { -p -q }\n"
        "weight w0 2/3\n"
        "weight w1 1/3\n";
    ParsedModel pm = parse_model(text);
    CHECK(pm.model.worlds == std::vector<std::string>({"w0", "w1"}));
    CHECK(pm.model.plus_at("w0") == std::set<std::string>{"p"});
    CHECK(pm.model.minus_at("w1") == std::set<std::string>({"p", "q"}));
    REQUIRE(pm.weights.has_value());
    CHECK((*pm.weights).at("w0") == Rat(2) / Rat(3));

    std::string again = serialize_model(pm.model, &*pm.weights);
    ParsedModel back = parse_model(again);
    CHECK(back.model.worlds == pm.model.worlds);
    CHECK(back.model.vplus == pm.model.vplus);
    CHECK(back.model.vminus == pm.model.vminus);
    CHECK(back.weights == pm.weights);
    CHECK(serialize_model(back.model, &*back.weights) == again);
  }

  TEST_CASE("random models survive serialization") {
    testgen::Rng rng(205);
    std::vector<std::string> vars = {"p", "q", "r"};
    for (int i = 0; i < 200; ++i) {
      auto rm = testgen::random_model(rng, 4, vars);
      ParsedModel back = parse_model(serialize_model(rm.model, &rm.weights.weight));
      CHECK(back.model.worlds == rm.model.worlds);
      CHECK(back.model.vplus == rm.model.vplus);
      CHECK(back.model.vminus == rm.model.vminus);
      REQUIRE(back.weights.has_value());
      CHECK(*back.weights == rm.weights.weight);
    }
  }

  TEST_CASE("model file rejections") {
    CHECK_THROWS_AS(parse_model("world w0 { +p }\nworld w0 { }\n"), InputError);
    CHECK_THROWS_AS(parse_model("weight w0 1\n"), InputError);            // weight before world
    CHECK_THROWS_AS(parse_model("world w0 { +p }\nweight w1 1\n"), InputError);
    CHECK_THROWS_AS(parse_model("world w0 { p }\n"), InputError);         // missing sign
    CHECK_THROWS_AS(parse_model(""), InputError);                          // no worlds
    CHECK_THROWS_AS(parse_model("hello\n"), InputError);
  }
}
