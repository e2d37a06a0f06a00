#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "segseed/image.hpp"

namespace segseed {

/// How the running standard deviation is maintained during growth.
///   exact         — numerically stable running mean/variance; equals batch
///                   recomputation over the accepted intensities.
///   paper_literal — V_N = sqrt(((N-2)*V_{N-1}^2 + I_N^2) / N), verbatim.
enum class StatsMode : std::uint8_t { exact, paper_literal };

/// Running statistics of a growing region. count == 1 means the region
/// holds only its seed: mean is the seed intensity and std is 0.
struct RegionStats {
    std::uint64_t count = 0;
    double mean = 0.0;
    double std = 0.0;
};

/// Stats for a freshly planted seed.
inline RegionStats seed_stats(std::uint8_t intensity) {
    return RegionStats{1, static_cast<double>(intensity), 0.0};
}

/// Folds one accepted intensity into the running statistics.
RegionStats stats_update(const RegionStats& stats, std::uint8_t intensity,
                         StatsMode mode = StatsMode::exact);

enum class Neighborhood : std::uint8_t { four, diagonal_four, eight };

/// Neighbor offsets in the fixed enqueue order: N, S, W, E, then
/// NW, NE, SW, SE where applicable.
std::span<const Point> neighbor_offsets(Neighborhood nbhd);

Neighborhood neighborhood_from_string(const std::string& name);
const char* to_string(Neighborhood nbhd);
const char* to_string(StatsMode mode);
StatsMode stats_mode_from_string(const std::string& name);

/// Acceptance predicate parameters. A candidate joins the region when
/// |intensity - mean| <= k * max(std, sigma_floor).
struct GrowthCriterion {
    double k = 2.5;
    double sigma_floor = 5.0;
    StatsMode stats_mode = StatsMode::exact;

    void validate() const;
};

bool accepts(const GrowthCriterion& criterion, const RegionStats& stats,
             std::uint8_t intensity);

struct GrowResult {
    std::vector<Point> pixels;  // includes the seed, in acceptance order
    RegionStats stats;
};

/// Grows one region from the seed by FIFO frontier expansion. Each
/// candidate is tested once, against the stats at the moment it is
/// popped; an accepted pixel updates the stats immediately and enqueues
/// its unvisited claimable neighbors in the fixed offset order.
/// claimable, when non-empty, is a row-major mask (nonzero = available).
GrowResult grow_region(const Image2D& image, Point seed,
                       const GrowthCriterion& criterion, Neighborhood nbhd,
                       std::span<const std::uint8_t> claimable = {});

struct ClassSeed {
    std::uint8_t cls = 0;  // {1,2,3}
    Point point;
};

/// Grows one region per seed, in list order; later regions may claim
/// only pixels left unclaimed by earlier ones. Unclaimed pixels stay
/// background.
LabelMap segment(const Image2D& image, const std::vector<ClassSeed>& seeds,
                 const GrowthCriterion& criterion, Neighborhood nbhd);

}  // namespace segseed
