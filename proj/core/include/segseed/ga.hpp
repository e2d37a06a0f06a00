#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "segseed/image.hpp"
#include "segseed/region_grow.hpp"
#include "segseed/seeding.hpp"

namespace segseed {

/// One GA individual: a seed triple, stored as indices into the
/// candidate pool so variation operators stay inside the feasible set.
/// gene_index[0] indexes the CSF list, [1] GM, [2] WM.
struct SeedChromosome {
    std::array<std::size_t, kNumTissueClasses> gene_index{};

    bool operator==(const SeedChromosome&) const = default;
};

struct GAConfig {
    int population_size = 30;
    int max_generations = 50;
    int tournament_size = 3;
    double crossover_rate = 0.8;
    double mutation_rate = 0.1;  // per gene
    int elite_count = 2;
    int stagnation_patience = 10;
    std::uint64_t rng_seed = 0;

    void validate() const;
};

/// Reads a plain-text key=value file ('#' starts a comment). Unknown keys
/// are rejected; missing keys keep their defaults.
GAConfig load_ga_config(const std::filesystem::path& path);

/// Region-growth order used when a chromosome is segmented: GM first,
/// then WM, then CSF.
inline constexpr std::array<std::uint8_t, 3> kDefaultGrowthOrder = {2, 3, 1};

/// Resolves a chromosome's genes to an ordered seed list in growth order.
std::vector<ClassSeed> chromosome_seeds(const SeedChromosome& chromosome,
                                        const CandidatePool& pool);

/// Worst finite cost, assigned to chromosomes whose growth is rejected.
inline double worst_cost(const Image2D& image) {
    return static_cast<double>(image.pixel_count()) * 3.0;
}

/// Cost of the segmentation grown from the given seeds: the sum over the
/// three classes of squared per-pixel differences between the grown
/// binary mask and the reference binary mask. Zero iff the grown
/// segmentation matches the reference exactly.
double fitness(const Image2D& image, const std::vector<ClassSeed>& seeds,
               const LabelMap& reference, const GrowthCriterion& criterion,
               Neighborhood nbhd);

struct GenerationRecord {
    int generation = 0;
    double best_cost = 0.0;
    double mean_cost = 0.0;
};

struct EvolveResult {
    SeedChromosome best;
    std::vector<ClassSeed> best_seeds;  // in growth order
    double best_cost = 0.0;
    std::vector<GenerationRecord> history;
};

/// Tournament selection, per-gene crossover, per-gene pool-resample
/// mutation, elitism, termination on generation budget or stagnation.
/// Fully deterministic for a fixed config.rng_seed.
EvolveResult evolve(const Image2D& image, const CandidatePool& pool,
                    const LabelMap& reference, const GrowthCriterion& criterion,
                    Neighborhood nbhd, const GAConfig& config);

}  // namespace segseed
