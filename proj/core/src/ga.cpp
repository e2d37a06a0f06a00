#include "segseed/ga.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "segseed/rng.hpp"

namespace segseed {

void GAConfig::validate() const {
    if (population_size < 2) throw AlgorithmError("population_size must be >= 2");
    if (max_generations < 1) throw AlgorithmError("max_generations must be >= 1");
    if (tournament_size < 1) throw AlgorithmError("tournament_size must be >= 1");
    if (crossover_rate < 0.0 || crossover_rate > 1.0) {
        throw AlgorithmError("crossover_rate must be in [0,1]");
    }
    if (mutation_rate < 0.0 || mutation_rate > 1.0) {
        throw AlgorithmError("mutation_rate must be in [0,1]");
    }
    if (elite_count < 0 || elite_count >= population_size) {
        throw AlgorithmError("elite_count must be in [0, population_size)");
    }
    if (stagnation_patience < 1) throw AlgorithmError("stagnation_patience must be >= 1");
}

GAConfig load_ga_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError(path.string() + ": cannot open GA config");
    GAConfig config;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw DataError(path.string() + ":" + std::to_string(lineno) +
                            ": expected key=value");
        }
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "population_size") config.population_size = std::stoi(value);
            else if (key == "max_generations") config.max_generations = std::stoi(value);
            else if (key == "tournament_size") config.tournament_size = std::stoi(value);
            else if (key == "crossover_rate") config.crossover_rate = std::stod(value);
            else if (key == "mutation_rate") config.mutation_rate = std::stod(value);
            else if (key == "elite_count") config.elite_count = std::stoi(value);
            else if (key == "stagnation_patience") config.stagnation_patience = std::stoi(value);
            else if (key == "rng_seed") config.rng_seed = std::stoull(value);
            else {
                throw DataError(path.string() + ":" + std::to_string(lineno) +
                                ": unknown key \"" + key + "\"");
            }
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            throw DataError(path.string() + ":" + std::to_string(lineno) +
                            ": bad value \"" + value + "\" for " + key);
        }
    }
    config.validate();
    return config;
}

std::vector<ClassSeed> chromosome_seeds(const SeedChromosome& chromosome,
                                        const CandidatePool& pool) {
    std::vector<ClassSeed> seeds;
    for (std::uint8_t cls : kDefaultGrowthOrder) {
        const auto& candidates = pool.for_class(cls);
        std::size_t idx = chromosome.gene_index[cls - 1];
        if (idx >= candidates.size()) {
            throw AlgorithmError("chromosome gene index out of pool range");
        }
        seeds.push_back({cls, candidates[idx]});
    }
    return seeds;
}

double fitness(const Image2D& image, const std::vector<ClassSeed>& seeds,
               const LabelMap& reference, const GrowthCriterion& criterion,
               Neighborhood nbhd) {
    if (reference.width() != image.width() || reference.height() != image.height()) {
        throw DataError("reference dimensions " + std::to_string(reference.width()) +
                        "x" + std::to_string(reference.height()) +
                        " do not match image " + std::to_string(image.width()) + "x" +
                        std::to_string(image.height()));
    }
    LabelMap produced;
    try {
        produced = segment(image, seeds, criterion, nbhd);
    } catch (const AlgorithmError&) {
        // A rejected seed disqualifies the chromosome without aborting the GA.
        return worst_cost(image);
    }

    // Sum over classes of squared binary-mask differences. With disjoint
    // masks this reduces to one unit per mismatching (pixel, class) slot.
    std::uint64_t cost = 0;
    const auto& p = produced.labels();
    const auto& g = reference.labels();
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == g[i]) continue;
        if (g[i] != 0) ++cost;
        if (p[i] != 0) ++cost;
    }
    return static_cast<double>(cost);
}

namespace {

struct Evaluator {
    const Image2D& image;
    const CandidatePool& pool;
    const LabelMap& reference;
    const GrowthCriterion& criterion;
    Neighborhood nbhd;
    std::map<std::array<std::size_t, 3>, double> cache;

    double cost(const SeedChromosome& chromosome) {
        auto it = cache.find(chromosome.gene_index);
        if (it != cache.end()) return it->second;
        double c = fitness(image, chromosome_seeds(chromosome, pool), reference,
                           criterion, nbhd);
        cache.emplace(chromosome.gene_index, c);
        return c;
    }
};

// Genes index per-class lists, but positions may still collide when the
// pool lists share points; re-draw the offending gene.
void repair_duplicates(SeedChromosome& chromosome, const CandidatePool& pool, Rng& rng) {
    for (std::uint8_t c = 2; c <= 3; ++c) {
        const auto& candidates = pool.for_class(c);
        for (int attempts = 0;; ++attempts) {
            Point p = candidates[chromosome.gene_index[c - 1]];
            bool clash = false;
            for (std::uint8_t other = 1; other < c; ++other) {
                if (pool.for_class(other)[chromosome.gene_index[other - 1]] == p) {
                    clash = true;
                    break;
                }
            }
            if (!clash) break;
            if (attempts > 1000) {
                throw AlgorithmError("cannot draw distinct seed positions from pool");
            }
            chromosome.gene_index[c - 1] = rng.bounded(candidates.size());
        }
    }
}

}  // namespace

EvolveResult evolve(const Image2D& image, const CandidatePool& pool,
                    const LabelMap& reference, const GrowthCriterion& criterion,
                    Neighborhood nbhd, const GAConfig& config) {
    config.validate();
    criterion.validate();
    for (std::uint8_t c = 1; c <= 3; ++c) {
        if (pool.for_class(c).empty()) {
            throw AlgorithmError("empty candidate pool for class " + std::to_string(c));
        }
    }

    Rng rng(config.rng_seed);
    Evaluator eval{image, pool, reference, criterion, nbhd, {}};

    auto random_chromosome = [&] {
        SeedChromosome chromosome;
        for (std::uint8_t c = 1; c <= 3; ++c) {
            chromosome.gene_index[c - 1] = rng.bounded(pool.for_class(c).size());
        }
        repair_duplicates(chromosome, pool, rng);
        return chromosome;
    };

    std::vector<SeedChromosome> population;
    population.reserve(config.population_size);
    for (int i = 0; i < config.population_size; ++i) {
        population.push_back(random_chromosome());
    }

    EvolveResult result;
    double best_so_far = std::numeric_limits<double>::infinity();
    int stall = 0;

    for (int generation = 1;; ++generation) {
        std::vector<double> costs(population.size());
        double sum = 0.0;
        for (std::size_t i = 0; i < population.size(); ++i) {
            costs[i] = eval.cost(population[i]);
            sum += costs[i];
        }
        std::vector<std::size_t> order(population.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return costs[a] < costs[b];
        });

        double gen_best = costs[order.front()];
        if (gen_best < best_so_far) {
            best_so_far = gen_best;
            result.best = population[order.front()];
            stall = 0;
        } else {
            ++stall;
        }
        result.history.push_back({generation, best_so_far,
                                  sum / static_cast<double>(population.size())});

        if (generation >= config.max_generations || stall >= config.stagnation_patience) {
            break;
        }

        std::vector<SeedChromosome> next;
        next.reserve(population.size());
        for (int e = 0; e < config.elite_count; ++e) {
            next.push_back(population[order[e]]);
        }
        auto tournament = [&] {
            std::size_t winner = rng.bounded(population.size());
            for (int t = 1; t < config.tournament_size; ++t) {
                std::size_t challenger = rng.bounded(population.size());
                if (costs[challenger] < costs[winner]) winner = challenger;
            }
            return winner;
        };
        while (next.size() < population.size()) {
            const SeedChromosome& p1 = population[tournament()];
            const SeedChromosome& p2 = population[tournament()];
            SeedChromosome child = p1;
            if (rng.unit() < config.crossover_rate) {
                for (std::size_t g = 0; g < child.gene_index.size(); ++g) {
                    if (rng.unit() < 0.5) child.gene_index[g] = p2.gene_index[g];
                }
            }
            for (std::uint8_t c = 1; c <= 3; ++c) {
                if (rng.unit() < config.mutation_rate) {
                    child.gene_index[c - 1] = rng.bounded(pool.for_class(c).size());
                }
            }
            repair_duplicates(child, pool, rng);
            next.push_back(child);
        }
        population = std::move(next);
    }

    result.best_cost = best_so_far;
    result.best_seeds = chromosome_seeds(result.best, pool);
    return result;
}

}  // namespace segseed
