#include <benchmark/benchmark.h>

#include "segseed/ga.hpp"
#include "segseed/phantom.hpp"
#include "segseed/region_grow.hpp"
#include "segseed/seeding.hpp"

using namespace segseed;

namespace {

Phantom noisy_phantom(int side) {
    return generate({side, side, {40, 120, 220}, 10.0, PhantomGeometry::concentric, 7});
}

std::vector<ClassSeed> center_seeds(const Phantom& phantom) {
    std::array<Point, 4> first{};
    std::array<bool, 4> found{};
    for (int y = 0; y < phantom.labels.height(); ++y) {
        for (int x = 0; x < phantom.labels.width(); ++x) {
            std::uint8_t code = phantom.labels.at(x, y);
            if (code != 0 && !found[code]) {
                first[code] = {x, y};
                found[code] = true;
            }
        }
    }
    return {{2, first[2]}, {3, first[3]}, {1, first[1]}};
}

void BM_StatsUpdateExact(benchmark::State& state) {
    RegionStats stats = seed_stats(120);
    std::uint8_t v = 0;
    for (auto _ : state) {
        stats = stats_update(stats, v++, StatsMode::exact);
        benchmark::DoNotOptimize(stats);
    }
}
BENCHMARK(BM_StatsUpdateExact);

void BM_GrowRegion(benchmark::State& state) {
    Phantom phantom = noisy_phantom(static_cast<int>(state.range(0)));
    Point seed = center_seeds(phantom)[1].point;  // WM core
    GrowthCriterion criterion;
    for (auto _ : state) {
        GrowResult r = grow_region(phantom.image, seed, criterion, Neighborhood::eight);
        benchmark::DoNotOptimize(r);
    }
    state.SetItemsProcessed(state.iterations() * phantom.image.pixel_count());
}
BENCHMARK(BM_GrowRegion)->Arg(64)->Arg(128)->Arg(256);

void BM_Segment(benchmark::State& state) {
    Phantom phantom = noisy_phantom(static_cast<int>(state.range(0)));
    std::vector<ClassSeed> seeds = center_seeds(phantom);
    GrowthCriterion criterion;
    for (auto _ : state) {
        LabelMap labels = segment(phantom.image, seeds, criterion, Neighborhood::eight);
        benchmark::DoNotOptimize(labels);
    }
    state.SetItemsProcessed(state.iterations() * phantom.image.pixel_count());
}
BENCHMARK(BM_Segment)->Arg(64)->Arg(128)->Arg(256);

void BM_Fitness(benchmark::State& state) {
    Phantom phantom = noisy_phantom(128);
    std::vector<ClassSeed> seeds = center_seeds(phantom);
    GrowthCriterion criterion;
    for (auto _ : state) {
        double cost = fitness(phantom.image, seeds, phantom.labels, criterion,
                              Neighborhood::eight);
        benchmark::DoNotOptimize(cost);
    }
}
BENCHMARK(BM_Fitness);

void BM_Evolve(benchmark::State& state) {
    Phantom phantom = noisy_phantom(64);
    CandidatePool pool = pool_from_thresholds(phantom.image, ThresholdBands{});
    GrowthCriterion criterion;
    GAConfig config;
    config.max_generations = static_cast<int>(state.range(0));
    config.stagnation_patience = config.max_generations;
    for (auto _ : state) {
        EvolveResult r = evolve(phantom.image, pool, phantom.labels, criterion,
                                Neighborhood::eight, config);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_Evolve)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
