// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// Serial vs OpenMP estimator sweep over a training set.

#include <benchmark/benchmark.h>
#include <map>
#include "romgrid/greedy.hpp"
#include "romgrid/io/grid.hpp"
#include "romgrid/io/synthetic.hpp"
#include "romgrid/sweep.hpp"

namespace
{

using namespace romgrid;

struct Fixture
{
  ParametricSystem sys;
  EstimatorWorkspace ws;
  std::vector<SamplePoint> samples;
};

const Fixture &Get(long n)
{
  static std::map<long, Fixture> cache;
  auto it = cache.find(n);
  if (it != cache.end())
  {
    return it->second;
  }
  Fixture f;
  f.sys = io::RcLadder(n);
  f.samples = io::LogFrequencyGrid(1e-5, 1.0, 120);
  GreedyConfig cfg;
  cfg.kind = EstimatorKind::Delta3Pr;
  cfg.training_set = f.samples;
  cfg.max_iterations = 4;
  cfg.record_true_errors = false;
  f.ws = RunGreedy(f.sys, cfg).workspace;
  return cache.emplace(n, std::move(f)).first->second;
}

void BM_SweepSerial(benchmark::State &state)
{
  const auto &f = Get(state.range(0));
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(SweepSerial(EstimatorKind::Delta3Pr, f.ws, f.sys, f.samples));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.samples.size()));
}

void BM_SweepParallel(benchmark::State &state)
{
  const auto &f = Get(state.range(0));
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(SweepParallel(EstimatorKind::Delta3Pr, f.ws, f.sys, f.samples));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.samples.size()));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
