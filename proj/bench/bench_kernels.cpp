// Serial reference kernels against their OpenMP counterparts. Each benchmark
// takes the execution mode as its argument: 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include "incidence/audit.hpp"
#include "incidence/battery.hpp"
#include "incidence/model.hpp"
#include "incidence/projectivities.hpp"

using namespace incidence;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

void BM_BatteryPappusGF5(benchmark::State& state) {
  const auto model = build_pg3(Ring::prime_field(5), false);
  BatteryOptions o;
  o.target = 200;
  o.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(model, Suite::pappus, o).holds);
  label(state);
}
BENCHMARK(BM_BatteryPappusGF5)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BatteryTransportRational(benchmark::State& state) {
  const auto model = build_pg3(Ring::rationals(), false);
  BatteryOptions o;
  o.target = 20;
  o.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(model, Suite::transport, o).transport_agree);
  label(state);
}
BENCHMARK(BM_BatteryTransportRational)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_AuditSpaceGF3(benchmark::State& state) {
  const auto model = model_from_spec("gf:3");
  AuditOptions o;
  o.budget = 5000;
  o.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(audit(model, AxiomSet::S, o).size());
  label(state);
}
BENCHMARK(BM_AuditSpaceGF3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_AuditPlaneMoulton(benchmark::State& state) {
  const auto model = model_from_spec("moulton");
  AuditOptions o;
  o.budget = 5000;
  o.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(audit(model, AxiomSet::P, o).size());
  label(state);
}
BENCHMARK(BM_AuditPlaneMoulton)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ChainComparisonRational(benchmark::State& state) {
  const Ring q = Ring::rationals();
  const Flat s = Flat::span({make_vec(q, 1, 0, 0, 0), make_vec(q, 0, 1, 0, 0)});
  Rng rng = trial_rng(1, 0, Stream::chain);
  std::optional<PerspectivityChain> c;
  while (!c) c = random_chain(s, 5, rng, 3);
  const Projectivity full = *c, reduced = reduce_chain(*c);
  const auto pts = comparison_points(s, 1, 400);
  for (auto _ : state) benchmark::DoNotOptimize(first_disagreement(full, reduced, pts, exec_of(state)));
  label(state);
}
BENCHMARK(BM_ChainComparisonRational)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
