#include <benchmark/benchmark.h>

#include "dt/chain.hpp"
#include "dt/dynamics.hpp"
#include "dt/experiments.hpp"
#include "dt/rep.hpp"
#include "dt/sampling.hpp"

using namespace dt;

namespace {

struct Fixture {
  AngleVector alpha;
  ActionAngleCoords coords;
  Representation rep;
};

Fixture make(int n) {
  Rng rng(42);
  Fixture f;
  f.alpha = random_alpha(n, rng);
  f.coords = random_coords(f.alpha, rng);
  f.rep = chain_to_rep(build_chain(f.alpha, f.coords));
  return f;
}

void BM_BuildChain(benchmark::State& st) {
  const Fixture f = make(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(build_chain(f.alpha, f.coords));
}
BENCHMARK(BM_BuildChain)->DenseRange(4, 8, 2);

void BM_ExtractCoords(benchmark::State& st) {
  const Fixture f = make(static_cast<int>(st.range(0)));
  const TriangleChain ch = build_chain(f.alpha, f.coords);
  for (auto _ : st) benchmark::DoNotOptimize(extract_coords(ch));
}
BENCHMARK(BM_ExtractCoords)->DenseRange(4, 8, 2);

void BM_RepToChain(benchmark::State& st) {
  const Fixture f = make(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(rep_to_chain(f.rep));
}
BENCHMARK(BM_RepToChain)->DenseRange(4, 8, 2);

void BM_Flow(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Fixture f = make(n);
  const CurveClass c = curve_e(n, n - 3);
  for (auto _ : st) benchmark::DoNotOptimize(flow(f.rep, c, 0.3));
}
BENCHMARK(BM_Flow)->DenseRange(4, 8, 2);

void BM_DehnTwist(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Fixture f = make(n);
  const CurveClass c = curve_e(n, n - 3);
  for (auto _ : st) benchmark::DoNotOptimize(normalize_gauge(dehn_twist(f.rep, c)));
}
BENCHMARK(BM_DehnTwist)->DenseRange(4, 8, 2);

void BM_Fingerprint(benchmark::State& st) {
  const Fixture f = make(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(fingerprint(f.rep));
}
BENCHMARK(BM_Fingerprint)->DenseRange(4, 8, 2);

void BM_PoissonFd(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Fixture f = make(n);
  const CurveClass b = curve_b(n, 1), d = curve_d(n, 1);
  for (auto _ : st) benchmark::DoNotOptimize(poisson_fd(f.rep, b, d));
}
BENCHMARK(BM_PoissonFd)->DenseRange(4, 8, 2);

void BM_RandomWalk(benchmark::State& st) {
  const Fixture f = make(4);
  OrbitOptions opt;
  opt.max_steps = st.range(0);
  opt.keep_records = false;
  opt.keep_words = false;
  const auto gens = standard_curves(4).all();
  for (auto _ : st) benchmark::DoNotOptimize(orbit_explore(f.rep, gens, opt));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_RandomWalk)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
