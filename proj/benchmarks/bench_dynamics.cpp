#include <benchmark/benchmark.h>

#include <random>

#include "qnnw/dynamics.hpp"
#include "qnnw/gradcheck.hpp"
#include "qnnw/training.hpp"
#include "qnnw/witness.hpp"

using namespace qnnw;

namespace {

struct Fixture {
  QnnParameters params;
  DensityMatrix rho;
  TrainingPair pair;

  explicit Fixture(int n) {
    std::mt19937_64 rng(5);
    params = random_parameters(n, 4, rng);
    pair = random_training_pair(n, rng);
    rho = pair.input;
  }
};

void BM_Evolve(benchmark::State& state) {
  const Fixture f(static_cast<int>(state.range(0)));
  const Schedule sched{300.0, 4, state.range(1) / 100.0};
  Trajectory traj;
  for (auto _ : state) benchmark::DoNotOptimize(evolve_into(f.rho, f.params, sched, UnitConvention::angular(), traj));
  state.counters["steps/s"] = benchmark::Counter(static_cast<double>(sched.total_steps()), benchmark::Counter::kIsIterationInvariantRate);
}

void BM_PairGradient(benchmark::State& state) {
  const Fixture f(static_cast<int>(state.range(0)));
  const Schedule sched{300.0, 4, state.range(1) / 100.0};
  Trajectory traj;
  for (auto _ : state) benchmark::DoNotOptimize(pair_gradient(f.pair, f.params, sched, UnitConvention::angular(), traj));
}

void BM_TrainingEpoch(benchmark::State& state) {
  const int stage = static_cast<int>(state.range(0));
  auto cfg = StageConfig::defaults(stage);
  cfg.epochs = 1;
  std::mt19937_64 rng(6);
  const auto p = random_parameters(cfg.n_qubits, 4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(train_stage(p, cfg, Schedule::coarse(), UnitConvention::angular()));
}

}  // namespace

// Second argument is dt in units of 0.01 ns.
BENCHMARK(BM_Evolve)->ArgsProduct({{2, 3, 4, 5}, {5, 50}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairGradient)->ArgsProduct({{2, 3, 4, 5}, {50}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrainingEpoch)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
