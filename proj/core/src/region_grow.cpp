#include "segseed/region_grow.hpp"

#include <cmath>
#include <deque>
#include <string>

namespace segseed {

namespace {

// N, S, W, E, NW, NE, SW, SE.
constexpr std::array<Point, 8> kEightOffsets = {{
    {0, -1}, {0, 1}, {-1, 0}, {1, 0}, {-1, -1}, {1, -1}, {-1, 1}, {1, 1}}};
constexpr std::array<Point, 4> kDiagonalOffsets = {{
    {-1, -1}, {1, -1}, {-1, 1}, {1, 1}}};

const char* class_name(std::uint8_t cls) {
    switch (cls) {
        case 1: return "CSF";
        case 2: return "GM";
        case 3: return "WM";
        default: return "background";
    }
}

}  // namespace

RegionStats stats_update(const RegionStats& stats, std::uint8_t intensity,
                         StatsMode mode) {
    const double x = static_cast<double>(intensity);
    const double n = static_cast<double>(stats.count + 1);
    RegionStats next;
    next.count = stats.count + 1;
    next.mean = stats.mean + (x - stats.mean) / n;
    if (mode == StatsMode::exact) {
        // Welford, with the sum of squared deviations recovered from std.
        double m2 = stats.std * stats.std * static_cast<double>(stats.count);
        m2 += (x - stats.mean) * (x - next.mean);
        next.std = std::sqrt(m2 / n);
    } else {
        const double prev_n = static_cast<double>(stats.count);
        next.std = std::sqrt(((prev_n - 1.0) * stats.std * stats.std + x * x) / n);
    }
    return next;
}

std::span<const Point> neighbor_offsets(Neighborhood nbhd) {
    switch (nbhd) {
        case Neighborhood::four:
            return std::span<const Point>(kEightOffsets.data(), 4);
        case Neighborhood::diagonal_four:
            return std::span<const Point>(kDiagonalOffsets.data(), 4);
        case Neighborhood::eight:
        default:
            return std::span<const Point>(kEightOffsets.data(), 8);
    }
}

Neighborhood neighborhood_from_string(const std::string& name) {
    if (name == "4") return Neighborhood::four;
    if (name == "diag4") return Neighborhood::diagonal_four;
    if (name == "8") return Neighborhood::eight;
    throw DataError("unknown neighborhood \"" + name + "\", expected 4, diag4 or 8");
}

const char* to_string(Neighborhood nbhd) {
    switch (nbhd) {
        case Neighborhood::four: return "4";
        case Neighborhood::diagonal_four: return "diag4";
        case Neighborhood::eight:
        default: return "8";
    }
}

const char* to_string(StatsMode mode) {
    return mode == StatsMode::exact ? "exact" : "paper-literal";
}

StatsMode stats_mode_from_string(const std::string& name) {
    if (name == "exact") return StatsMode::exact;
    if (name == "paper-literal") return StatsMode::paper_literal;
    throw DataError("unknown stats mode \"" + name + "\", expected exact or paper-literal");
}

void GrowthCriterion::validate() const {
    if (!(k > 0.0)) throw AlgorithmError("criterion k must be > 0");
    if (!(sigma_floor > 0.0)) throw AlgorithmError("criterion sigma_floor must be > 0");
}

bool accepts(const GrowthCriterion& criterion, const RegionStats& stats,
             std::uint8_t intensity) {
    const double sigma = std::max(stats.std, criterion.sigma_floor);
    return std::abs(static_cast<double>(intensity) - stats.mean) <= criterion.k * sigma;
}

GrowResult grow_region(const Image2D& image, Point seed,
                       const GrowthCriterion& criterion, Neighborhood nbhd,
                       std::span<const std::uint8_t> claimable) {
    criterion.validate();
    if (!image.in_bounds(seed)) {
        throw AlgorithmError("seed (" + std::to_string(seed.x) + "," +
                             std::to_string(seed.y) + ") out of bounds");
    }
    auto index = [&](Point p) {
        return static_cast<std::size_t>(p.y) * image.width() + p.x;
    };
    auto is_claimable = [&](Point p) {
        return claimable.empty() || claimable[index(p)] != 0;
    };
    if (!is_claimable(seed)) {
        throw AlgorithmError("seed (" + std::to_string(seed.x) + "," +
                             std::to_string(seed.y) + ") is already claimed");
    }

    const auto offsets = neighbor_offsets(nbhd);
    std::vector<std::uint8_t> visited(image.pixel_count(), 0);

    GrowResult result;
    result.pixels.push_back(seed);
    result.stats = seed_stats(image.at(seed));
    visited[index(seed)] = 1;

    std::deque<Point> frontier;
    auto enqueue_neighbors = [&](Point p) {
        for (const Point& d : offsets) {
            Point q{p.x + d.x, p.y + d.y};
            if (!image.in_bounds(q)) continue;
            std::size_t qi = index(q);
            if (visited[qi] || !is_claimable(q)) continue;
            visited[qi] = 1;
            frontier.push_back(q);
        }
    };
    enqueue_neighbors(seed);

    while (!frontier.empty()) {
        Point p = frontier.front();
        frontier.pop_front();
        if (!accepts(criterion, result.stats, image.at(p))) continue;
        result.stats = stats_update(result.stats, image.at(p), criterion.stats_mode);
        result.pixels.push_back(p);
        enqueue_neighbors(p);
    }
    return result;
}

LabelMap segment(const Image2D& image, const std::vector<ClassSeed>& seeds,
                 const GrowthCriterion& criterion, Neighborhood nbhd) {
    criterion.validate();
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (seeds[i].cls < 1 || seeds[i].cls > 3) {
            throw AlgorithmError("seed class code " + std::to_string(seeds[i].cls) +
                                 " out of range {1..3}");
        }
        if (!image.in_bounds(seeds[i].point)) {
            throw AlgorithmError(std::string("seed for ") + class_name(seeds[i].cls) +
                                 " out of bounds");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (seeds[j].point == seeds[i].point) {
                throw AlgorithmError("duplicate seed position (" +
                                     std::to_string(seeds[i].point.x) + "," +
                                     std::to_string(seeds[i].point.y) + ") shared by " +
                                     class_name(seeds[j].cls) + " and " +
                                     class_name(seeds[i].cls));
            }
        }
    }

    LabelMap out(image.width(), image.height(), 0);
    std::vector<std::uint8_t> unclaimed(image.pixel_count(), 1);
    for (const ClassSeed& seed : seeds) {
        std::size_t seed_index =
            static_cast<std::size_t>(seed.point.y) * image.width() + seed.point.x;
        if (!unclaimed[seed_index]) {
            throw AlgorithmError(std::string("seed for ") + class_name(seed.cls) +
                                 " at (" + std::to_string(seed.point.x) + "," +
                                 std::to_string(seed.point.y) +
                                 ") lands on a pixel claimed by an earlier region");
        }
        GrowResult grown = grow_region(image, seed.point, criterion, nbhd, unclaimed);
        for (const Point& p : grown.pixels) {
            out.at(p.x, p.y) = seed.cls;
            unclaimed[static_cast<std::size_t>(p.y) * image.width() + p.x] = 0;
        }
    }
    return out;
}

}  // namespace segseed
