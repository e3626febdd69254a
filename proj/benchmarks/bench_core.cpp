#include <benchmark/benchmark.h>

#include "lwa/experiments.hpp"

#include <random>

namespace {

lwa::UserSet users_for(std::uint64_t trial)
{
    return lwa::sample_users(lwa::ScenarioConfig{}, trial);
}

} // namespace

static void BM_DiffractionGain(benchmark::State& state) {
    const lwa::LwaConfig cfg{1e-3, 30e-3, 0.0};
    double angle = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lwa::diffraction_gain(cfg, angle, 450e9));
        angle += 1e-6;
    }
}
BENCHMARK(BM_DiffractionGain);

static void BM_Waterfill(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(1e-4, 1.0);
    std::vector<double> gains(state.range(0));
    for (auto& g : gains)
        g = u(rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(lwa::waterfill(gains, 10.0, lwa::NoiseModel{1.0}));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Waterfill)->RangeMultiplier(4)->Range(8, 2048)->Complexity();

static void BM_GainTable(benchmark::State& state) {
    const auto points = static_cast<std::size_t>(state.range(0));
    const auto grids = lwa::SearchGrids::uniform(lwa::LwaBounds{}, points, points);
    const lwa::ScenarioConfig config;
    const auto scenario = lwa::make_scenario(config, users_for(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(lwa::GainTable(grids, scenario));
}
BENCHMARK(BM_GainTable)->Arg(3)->Arg(11)->Arg(21)->Arg(41);

static void BM_AlternateOptimize(benchmark::State& state) {
    const lwa::ScenarioConfig config;
    const auto grids = config.search_grids();
    std::uint64_t trial = 0;
    for (auto _ : state) {
        const auto scenario = lwa::make_scenario(config, users_for(trial++ % 16));
        benchmark::DoNotOptimize(
            lwa::alternate_optimize(grids, config.power, scenario, config.noise(), config.optimizer_options()));
    }
}
BENCHMARK(BM_AlternateOptimize)->Unit(benchmark::kMillisecond);

static void BM_MimoSumRate(benchmark::State& state) {
    const lwa::ScenarioConfig config;
    const auto tensor = lwa::build_mimo_channel(lwa::UlaGeometry(static_cast<std::size_t>(state.range(0)), 500e9),
                                                config.frequency_grid(), users_for(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(lwa::mimo_sum_rate(tensor, 10.0, lwa::NoiseModel{1.0}));
}
BENCHMARK(BM_MimoSumRate)->Arg(1)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
