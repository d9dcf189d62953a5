#include <benchmark/benchmark.h>

#include "kkscatter/analytic_scattering.hpp"
#include "kkscatter/currents.hpp"

using namespace kkscatter;

namespace {

std::vector<double> k1_grid(std::size_t n) {
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = 0.01 + 10.0 * i / n;
  return grid;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto grid = k1_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(serial::sweep_coefficients(1.0, grid));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto grid = k1_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep_coefficients(1.0, grid));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

struct FieldInputs {
  ScatteringSetup setup = make_setup(1.0, 2.0, 2, {1.0, 0.5}, {0.0, 1.0});
  ScatteringAmplitudes amps = coefficients(setup);
  std::vector<SurfacePoint> points;

  explicit FieldInputs(std::size_t side) {
    points = region_grid(Part::Incident, GridSpec{side, side, -10.0, -0.01});
  }
};

void BM_CurrentFieldSerial(benchmark::State& state) {
  const FieldInputs in(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(serial::evaluate_current_field(
        Part::Incident, in.points, in.setup, in.amps));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(in.points.size()));
}

void BM_CurrentFieldParallel(benchmark::State& state) {
  const FieldInputs in(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        evaluate_current_field(Part::Incident, in.points, in.setup, in.amps));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(in.points.size()));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_SweepParallel)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_CurrentFieldSerial)->Arg(64)->Arg(256);
BENCHMARK(BM_CurrentFieldParallel)->Arg(64)->Arg(256);

BENCHMARK_MAIN();
