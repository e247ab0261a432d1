#include <benchmark/benchmark.h>

#include <cone_spectra/io.hpp>

using namespace cone_spectra;

static void BM_BuildMesh(benchmark::State& state) {
  const ConeSpec cone = make_cone(Preset::HalfPlane, 3);
  const int level = static_cast<int>(state.range(0));
  const int grading = static_cast<int>(state.range(1));
  std::size_t vertices = 0;
  for (auto _ : state) {
    const CrackMesh m = build_mesh(cone, level, grading);
    vertices = m.vertices.size();
    benchmark::DoNotOptimize(m.id);
  }
  state.counters["vertices"] = static_cast<double>(vertices);
}
BENCHMARK(BM_BuildMesh)->Args({3, 0})->Args({4, 0})->Args({5, 0})->Args({4, 6})->Unit(benchmark::kMillisecond);

static void BM_Assemble(benchmark::State& state) {
  const CrackMesh m = build_mesh(make_cone(Preset::Empty, 3), static_cast<int>(state.range(0)), 0);
  for (auto _ : state) {
    const OperatorPair p = assemble(m);
    benchmark::DoNotOptimize(p.stiffness.nonZeros());
  }
  state.counters["vertices"] = static_cast<double>(m.vertices.size());
}
BENCHMARK(BM_Assemble)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

static void BM_SolveSparse(benchmark::State& state) {
  const OperatorPair p =
      assemble(build_mesh(make_cone(Preset::HalfPlane, 3), static_cast<int>(state.range(0)), 4));
  SolverOptions opts;
  opts.dense_threshold = 0;
  for (auto _ : state) {
    const Spectrum s = solve(p, 6, opts);
    benchmark::DoNotOptimize(s.eigenvalues.data());
  }
  state.counters["n"] = static_cast<double>(p.dimension());
}
BENCHMARK(BM_SolveSparse)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_SolveDense(benchmark::State& state) {
  const OperatorPair p = assemble(build_mesh(make_cone(Preset::Empty, 3), static_cast<int>(state.range(0)), 0));
  for (auto _ : state) {
    const Spectrum s = solve(p, 6);
    benchmark::DoNotOptimize(s.eigenvalues.data());
  }
  state.counters["n"] = static_cast<double>(p.dimension());
}
BENCHMARK(BM_SolveDense)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

static void BM_BandMass(benchmark::State& state) {
  const BandSpec band{1.0, 0.05, Vec3(0.1, 0.3, -0.2)};
  for (auto _ : state) benchmark::DoNotOptimize(poisson_band_mass(band));
}
BENCHMARK(BM_BandMass)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
