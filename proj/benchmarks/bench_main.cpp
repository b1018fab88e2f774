#include <benchmark/benchmark.h>

#include "qhfol/diffeo.hpp"

using namespace qhfol;

static void BM_ResolveCurve(benchmark::State& st) {
  const BiPoly f = BiPoly::monomial(1, 0, 3) - BiPoly::monomial(1, st.range(0), 0);
  for (auto _ : st) benchmark::DoNotOptimize(resolve_curve(f));
}
BENCHMARK(BM_ResolveCurve)->Arg(4)->Arg(5)->Arg(8)->Arg(13);

static void BM_ResolveFoliation(benchmark::State& st) {
  const OneForm w = OneForm::exact(BiPoly::parse("y^3 - x^5"));
  for (auto _ : st) benchmark::DoNotOptimize(resolve_foliation(w));
}
BENCHMARK(BM_ResolveFoliation);

static void BM_VerifyPrediction(benchmark::State& st) {
  const BiPoly f = BiPoly::parse("y^5 - x^8");
  for (auto _ : st) benchmark::DoNotOptimize(verify_prediction(f));
}
BENCHMARK(BM_VerifyPrediction);

static void BM_JacobianMembership(benchmark::State& st) {
  const BiPoly f = BiPoly::parse("x^5 + y^5 + x^3*y^3");
  for (auto _ : st) benchmark::DoNotOptimize(jacobian_membership(f, st.range(0)));
}
BENCHMARK(BM_JacobianMembership)->Arg(8)->Arg(12)->Arg(14);

static void BM_Takens(benchmark::State& st) {
  const Weight w{2, 3, 6, false};
  const OneForm omega = OneForm::exact(BiPoly::parse("y^2 - x^3")) +
                        BiPoly::parse("x + x*y - 2*x^3") * rotational_form(w);
  for (auto _ : st) benchmark::DoNotOptimize(takens_normal_form(omega, w, st.range(0)));
}
BENCHMARK(BM_Takens)->Arg(12)->Arg(20);

static void BM_JetCompose(benchmark::State& st) {
  Series<Rat> s(st.range(0));
  for (long k = 1; k <= st.range(0); ++k) s[k] = Rat(k % 5 + 1, k + 1);
  const ExactJet f(s);
  for (auto _ : st) benchmark::DoNotOptimize(compose(f, f));
}
BENCHMARK(BM_JetCompose)->Arg(8)->Arg(12);

static void BM_HolonomyRep(benchmark::State& st) {
  const OneForm w = OneForm::exact(BiPoly::parse("y^2 - x^3"));
  NumericParams p;
  p.order = 8;
  p.jobs = static_cast<unsigned>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(holonomy_rep(w, p));
}
BENCHMARK(BM_HolonomyRep)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_SameHolonomy(benchmark::State& st) {
  const OneForm w = OneForm::exact(BiPoly::parse("y^2 - x^3"));
  NumericParams p;
  p.order = 8;
  const HolonomyRep r = holonomy_rep(w, p);
  for (auto _ : st) benchmark::DoNotOptimize(same_holonomy_test(r, r, Pairing::identity(r.generators.size()), 6));
}
BENCHMARK(BM_SameHolonomy);
BENCHMARK_MAIN();
