#include <benchmark/benchmark.h>

#include "tglasso/synthetic.hpp"
#include "tglasso/trimmed_solver.hpp"

using namespace tglasso;

namespace {

struct Problem {
  GroundTruth gt;
  ContaminatedSample sample;
};

Problem make_problem(Index p, Index n) {
  RngStream rng(2024, 0);
  GroundTruth gt = gen_hub_precision(p, rng);
  ContaminatedSample cs = gen_contaminated(gt, Scenario::M1, n, 0.1, rng);
  return {std::move(gt), std::move(cs)};
}

void BM_Cholesky(benchmark::State& state) {
  const Index p = state.range(0);
  RngStream rng(1, 0);
  const GroundTruth gt = gen_hub_precision(p, rng);
  for (auto _ : state) benchmark::DoNotOptimize(try_cholesky(gt.theta_star));
}
BENCHMARK(BM_Cholesky)->Arg(50)->Arg(150)->Arg(300);

void BM_UpdateWeights(benchmark::State& state) {
  const Problem prob = make_problem(state.range(0), 200);
  const PrecisionEstimate theta(prob.gt.theta_star);
  for (auto _ : state) benchmark::DoNotOptimize(update_weights(theta, prob.sample.data, 160));
}
BENCHMARK(BM_UpdateWeights)->Arg(50)->Arg(150);

void BM_CompositeFit(benchmark::State& state) {
  const Problem prob = make_problem(150, 100);
  SolverConfig cfg;
  cfg.lambda = 0.2;
  cfg.h = 80;
  for (auto _ : state) benchmark::DoNotOptimize(fit(prob.sample.data, cfg));
}
BENCHMARK(BM_CompositeFit)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
