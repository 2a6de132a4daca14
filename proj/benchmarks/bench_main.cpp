#include <bdluk/bd_semantics.hpp>
#include <bdluk/decision.hpp>
#include <bdluk/embeddings.hpp>
#include <bdluk/linear.hpp>
#include <bdluk/luk_eval.hpp>
#include <bdluk/syntax.hpp>
#include <bdluk/tableau.hpp>

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

using namespace bdluk;

namespace {

BDModel bench_model() {
  return BDModel({"w0", "w1", "w2"}, {{"w0", {"p"}}, {"w2", {"q"}}},
                 {{"w0", {"p"}}, {"w1", {"p", "q"}}});
}

WorldWeights bench_weights(const BDModel& m) {
  return WorldWeights(m, {{"w0", Rat(1, 3)}, {"w1", Rat(1, 3)}, {"w2", Rat(1, 3)}});
}

void BM_bd_entails(benchmark::State& state) {
  BDRef f = parse_bd("-(p & q) | (r & -s)");
  BDRef g = parse_bd("-p | -q | r");
  for (auto _ : state) benchmark::DoNotOptimize(bd_entails(f, g));
}
BENCHMARK(BM_bd_entails);

void BM_eval_pm(benchmark::State& state) {
  BDModel m = bench_model();
  WorldWeights w = bench_weights(m);
  OuterRef f = parse_outer("!(Pr{p} -> Pr{p | q}) (+) -Pr{p & q} (*) ~Pr{q}", Dialect::PM);
  for (auto _ : state) benchmark::DoNotOptimize(eval_pm(m, w, f));
}
BENCHMARK(BM_eval_pm);

void BM_nnf(benchmark::State& state) {
  OuterRef f = parse_outer("-(-(Pr{p} -> -Pr{q}) (+) -!Pr{p & q})", Dialect::PM);
  for (auto _ : state) benchmark::DoNotOptimize(nnf(f));
}
BENCHMARK(BM_nnf);

void BM_simplex_feasible(benchmark::State& state) {
  std::vector<LinConstraint> sys;
  auto v = [](const char* n) { return AffineTerm::of_var(n); };
  auto c = [](int k) { return AffineTerm::of_const(Rat(k)); };
  sys.push_back({v("x0") + v("x1") + v("x2"), Rel::Eq, c(1)});
  sys.push_back({v("x0") - v("x1"), Rel::Lt, c(0)});
  sys.push_back({v("x1") - v("x2"), Rel::Le, v("x3")});
  sys.push_back({v("x3") + v("x0"), Rel::Le, c(1)});
  sys.push_back({c(0), Rel::Lt, v("x3")});
  VarBounds bounds;
  for (auto _ : state) benchmark::DoNotOptimize(feasible(sys, bounds));
}
BENCHMARK(BM_simplex_feasible);

void BM_tableau_prove(benchmark::State& state) {
  OuterRef f = parse_outer("((a -> b) -> b) -> ((b -> a) -> a)", Dialect::PlainLuk);
  for (auto _ : state) benchmark::DoNotOptimize(prove_luk_valid(f));
}
BENCHMARK(BM_tableau_prove);

void BM_decide_valid_pm(benchmark::State& state) {
  OuterRef f = parse_outer("Pr{p & q} -> Pr{p}", Dialect::PM);
  for (auto _ : state) benchmark::DoNotOptimize(decide_valid_pm(f));
}
BENCHMARK(BM_decide_valid_pm);

}  // namespace

BENCHMARK_MAIN();
