#include <benchmark/benchmark.h>

#include "strobo/coherent_sum.hpp"
#include "strobo/ensemble.hpp"
#include "strobo/fock.hpp"
#include "strobo/trajectory.hpp"
#include "strobo/wave_grid.hpp"

namespace {

strobo::SystemParams reference_params() {
  strobo::SystemParams p;
  p.ratio = 0.106;
  p.kick = 2.0;
  p.z0 = {0.0, 0.0};
  return p;
}

// Branch sum after n alternating outcomes.
strobo::TrajectoryState state_after(int n) {
  auto st = strobo::initial_state(reference_params(), 1);
  for (int k = 0; k < n; ++k) {
    const auto probs = strobo::outcome_probabilities(st);
    st = strobo::advance(st, probs.plus >= probs.minus ? 1 : -1, probs);
  }
  return st;
}

void BM_SumNormSq(benchmark::State& s) {
  const auto st = state_after(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(strobo::sum_norm_sq(st.branches, 0.0));
}
BENCHMARK(BM_SumNormSq)->DenseRange(6, 11, 1);

void BM_KickCrossTerm(benchmark::State& s) {
  const auto st = state_after(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(strobo::kick_cross_term(st.branches, st.params));
}
BENCHMARK(BM_KickCrossTerm)->DenseRange(6, 11, 1);

void BM_EnsembleHusimi(benchmark::State& s) {
  const auto ens = strobo::enumerate_ensemble(reference_params(), static_cast<int>(s.range(0)));
  for (auto _ : s) {
    strobo::HusimiGrid grid(-12.0, 12.0, 121, -12.0, 12.0, 121);
    benchmark::DoNotOptimize(strobo::ensemble_husimi(ens, std::move(grid)));
  }
}
BENCHMARK(BM_EnsembleHusimi)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_GridStep(benchmark::State& s) {
  const auto p = reference_params();
  const auto layout = strobo::GridLayout::for_steps(p, static_cast<int>(s.range(0)));
  strobo::WavefunctionTrajectory base(p, 1, layout);
  for (auto _ : s) {
    auto w = base;
    const auto probs = w.outcome_probabilities();
    w.advance(probs.plus >= probs.minus ? 1 : -1);
    benchmark::DoNotOptimize(w.samples().data());
  }
  s.counters["points"] = static_cast<double>(layout.points);
}
BENCHMARK(BM_GridStep)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_FockPropagate(benchmark::State& s) {
  const int n_max = static_cast<int>(s.range(0));
  const auto [hp, hm] = strobo::build_hpm(2.0, n_max);
  const auto psi = strobo::coherent_in_fock({1.0, 0.5}, n_max).amplitudes;
  for (auto _ : s) benchmark::DoNotOptimize(strobo::propagate(hp, 2.0 * 3.141592653589793 * 0.106, psi));
}
BENCHMARK(BM_FockPropagate)->Arg(200)->Arg(480)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
