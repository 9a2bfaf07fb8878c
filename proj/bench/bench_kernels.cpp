// Serial reference vs OpenMP kernels on the default model.

#include <benchmark/benchmark.h>

#include "crflow/checks.hpp"
#include "crflow/config.hpp"

using namespace crflow;

namespace {

struct Fixture {
  Fixture() : m(build_model(default_model(1.0))) {
    SampleSpec spec;
    spec.n = 200;
    pts = sample_surface(m, spec);
    for (const auto& p : pts) samples.push_back({p.z2, p.z1.imag()});
  }
  ModelSurface m;
  std::vector<SurfacePoint> pts;
  std::vector<IdentitySample> samples;
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Exec::kSerial : Exec::kParallel;
}

void BM_Invariance(benchmark::State& state) {
  const auto& f = fixture();
  ScopedPrecision scope(f.m.precision());
  const std::vector<Real> times = {Real(0.1), Real(-0.5), Real(1)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_invariance(f.m, flow_of(f.m), f.pts, times, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.pts.size() * times.size()));
}

void BM_WirtingerAgreement(benchmark::State& state) {
  const auto& f = fixture();
  ScopedPrecision scope(f.m.precision());
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_wirtinger_agreement(f.m, f.samples, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.samples.size()));
}

void BM_Sampling(benchmark::State& state) {
  const auto& f = fixture();
  SampleSpec spec;
  spec.n = 200;
  // sample_surface always uses the parallel kernel; this is its cost
  for (auto _ : state) benchmark::DoNotOptimize(sample_surface(f.m, spec));
}

}  // namespace

BENCHMARK(BM_Invariance)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WirtingerAgreement)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sampling)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
