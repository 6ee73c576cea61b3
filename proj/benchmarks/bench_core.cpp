#include <benchmark/benchmark.h>

#include "adelic/baker/baker_bound.hpp"
#include "adelic/bundles/bundle.hpp"
#include "adelic/heights/heights.hpp"
#include "adelic/linform/linform.hpp"

namespace {

using namespace adelic;

void BM_WeilHeightQuadratic(benchmark::State& state) {
  NumberField k = NumberField::parse("x^2+1");
  FieldElement x = k.parse_element("[1234/5, 987]");
  for (auto _ : state) benchmark::DoNotOptimize(weil_height(x, k, PrecisionContext{}));
}
BENCHMARK(BM_WeilHeightQuadratic);

void BM_WeilHeightCubic(benchmark::State& state) {
  NumberField k = NumberField::parse("x^3-x-1");
  FieldElement x = k.parse_element("[3/7, -1, 5/11]");
  for (auto _ : state) benchmark::DoNotOptimize(weil_height(x, k, PrecisionContext{}));
}
BENCHMARK(BM_WeilHeightCubic);

void BM_BundleDegree(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  NumberField q = NumberField::parse("x");
  KMatrix f(n, std::vector<FieldElement>(n, q.from_rational(0)));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) f[i][j] = q.from_rational(mpq_class(i + 2 * j + 1, j + 1));
  AdelicBundle e(q, n, {NormSpec::archimedean(q, q.place("inf0"), f)});
  for (auto _ : state) benchmark::DoNotOptimize(degree(e, PrecisionContext{}));
}
BENCHMARK(BM_BundleDegree)->Arg(2)->Arg(4)->Arg(8);

BoundInstance sample_instance(int n) {
  BoundInstance bi;
  bi.n = n;
  bi.t = 1;
  bi.degree = 1;
  bi.log_frak_e = LogLinear::rational(1);
  for (int i = 0; i < n; ++i) bi.log_a.push_back(LogLinear::log_of(mpz_class(2 * i + 3)));
  bi.log_b = LogLinear::rational(2);
  bi.s = 1;
  bi.validate();
  return bi;
}

void BM_ComputeParams(benchmark::State& state) {
  BoundInstance bi = sample_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_params(bi, 256));
}
BENCHMARK(BM_ComputeParams)->Arg(1)->Arg(3)->Arg(6);

void BM_TheoremBound(benchmark::State& state) {
  BoundInstance bi = sample_instance(3);
  for (auto _ : state) benchmark::DoNotOptimize(theorem_bound(BoundKind::Principal, bi, 256));
}
BENCHMARK(BM_TheoremBound);

void BM_VerifyArchimedean(benchmark::State& state) {
  LinFormInstance inst;
  inst.k = NumberField::parse("x");
  inst.alpha = {inst.k.from_rational(2), inst.k.from_rational(3)};
  inst.log_kind = LogKind::Archimedean;
  inst.branches = {0, 0};
  inst.v0 = inst.k.place("inf0");
  inst.beta = {{inst.k.from_rational(0), inst.k.from_rational(5), inst.k.from_rational(-3)}};
  for (auto _ : state) benchmark::DoNotOptimize(verify_instance(inst, BoundKind::Principal, PrecisionContext{}));
}
BENCHMARK(BM_VerifyArchimedean);

void BM_VerifyPadic(benchmark::State& state) {
  LinFormInstance inst;
  inst.k = NumberField::parse("x");
  inst.alpha = {inst.k.from_rational(8), inst.k.from_rational(50)};
  inst.log_kind = LogKind::Padic;
  inst.v0 = inst.k.place("7");
  inst.beta = {{inst.k.from_rational(0), inst.k.from_rational(1), inst.k.from_rational(1)}};
  for (auto _ : state) benchmark::DoNotOptimize(verify_instance(inst, BoundKind::Principal, PrecisionContext{}));
}
BENCHMARK(BM_VerifyPadic);

}  // namespace

BENCHMARK_MAIN();
