#include <benchmark/benchmark.h>

#include "nullcong/cr_graph.hpp"
#include "nullcong/grid.hpp"
#include "nullcong/maxwell.hpp"

using namespace nullcong;

namespace {

CongruenceField kerr() { return linear_kerr({cplx(0.5, 0.2), cplx(-0.3, 1.0)}, {cplx(1.0), cplx(0.2, -0.4)}); }

void BM_ShearAD(benchmark::State& state) {
  const CongruenceField f = kerr();
  const Event x(1.0, 0.1, 0.2, -0.1);
  for (auto _ : state) benchmark::DoNotOptimize(shear(f, x));
}
BENCHMARK(BM_ShearAD);

void BM_ShearFD(benchmark::State& state) {
  const CongruenceField f = kerr().with(Differentiation::CentralFD, CongruenceField::kDefaultStep);
  const Event x(1.0, 0.1, 0.2, -0.1);
  for (auto _ : state) benchmark::DoNotOptimize(shear(f, x));
}
BENCHMARK(BM_ShearFD);

void BM_CrGraphNewton(benchmark::State& state) {
  const CrGraphSolver solver;
  const Event x = cr_graph_reference_event() + Event(0.0, 0.05, 0.05, 0.05);
  // cold start from the reference seed
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve(x, kCrGraphReferenceZeta));
}
BENCHMARK(BM_CrGraphNewton);

void BM_MaxwellResidual(benchmark::State& state) {
  const NullFieldSpec spec(kerr(), profile("a2"), Event(1.0, 0.1, 0.2, -0.1));
  const int n = static_cast<int>(state.range(0));
  const auto pts = GridSpec::cube(Event(1.0, 0.1, 0.2, -0.1), 0.2, n).events();
  for (auto _ : state) benchmark::DoNotOptimize(maxwell_residual(spec, pts));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pts.size()));
}
BENCHMARK(BM_MaxwellResidual)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
