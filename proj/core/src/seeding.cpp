#include "segseed/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "segseed/rng.hpp"

namespace segseed {

namespace {

const char* class_name(std::uint8_t cls) {
    switch (cls) {
        case 1: return "CSF";
        case 2: return "GM";
        case 3: return "WM";
        default: return "background";
    }
}

}  // namespace

const Band& ThresholdBands::for_class(std::uint8_t cls) const {
    switch (cls) {
        case 1: return csf;
        case 2: return gm;
        case 3: return wm;
        default:
            throw DataError("invalid class code " + std::to_string(cls));
    }
}

void ThresholdBands::validate() const {
    const std::array<const Band*, 3> all = {&csf, &gm, &wm};
    for (std::uint8_t c = 1; c <= 3; ++c) {
        const Band& b = *all[c - 1];
        if (b.lo < 0 || b.hi > 255 || b.lo > b.hi) {
            throw DataError(std::string("invalid band for ") + class_name(c) + ": [" +
                            std::to_string(b.lo) + "," + std::to_string(b.hi) + "]");
        }
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            if (all[i]->lo <= all[j]->hi && all[j]->lo <= all[i]->hi) {
                throw DataError(std::string("bands overlap: ") +
                                class_name(static_cast<std::uint8_t>(i + 1)) + " and " +
                                class_name(static_cast<std::uint8_t>(j + 1)));
            }
        }
    }
}

ThresholdBands ThresholdBands::parse(const std::string& text) {
    std::array<int, 6> values{};
    std::stringstream stream(text);
    std::string token;
    std::size_t n = 0;
    while (std::getline(stream, token, ',')) {
        if (n >= values.size()) throw DataError("bands: expected 6 integers, got more");
        try {
            values[n++] = std::stoi(token);
        } catch (const std::exception&) {
            throw DataError("bands: \"" + token + "\" is not an integer");
        }
    }
    if (n != values.size()) {
        throw DataError("bands: expected 6 integers, got " + std::to_string(n));
    }
    ThresholdBands bands;
    bands.csf = {values[0], values[1]};
    bands.gm = {values[2], values[3]};
    bands.wm = {values[4], values[5]};
    bands.validate();
    return bands;
}

std::string ThresholdBands::to_string() const {
    std::ostringstream out;
    out << csf.lo << "," << csf.hi << "," << gm.lo << "," << gm.hi << ","
        << wm.lo << "," << wm.hi;
    return out.str();
}

CandidatePool pool_from_thresholds(const Image2D& image, const ThresholdBands& bands) {
    bands.validate();
    CandidatePool pool;
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            int v = image.at(x, y);
            for (std::uint8_t c = 1; c <= 3; ++c) {
                const Band& b = bands.for_class(c);
                if (v >= b.lo && v <= b.hi) {
                    pool.by_class[c - 1].push_back({x, y});
                    break;
                }
            }
        }
    }
    for (std::uint8_t c = 1; c <= 3; ++c) {
        if (pool.by_class[c - 1].empty()) {
            throw AlgorithmError(std::string("empty candidate pool for ") +
                                 class_name(c) + ": no pixel in band [" +
                                 std::to_string(bands.for_class(c).lo) + "," +
                                 std::to_string(bands.for_class(c).hi) + "]");
        }
    }
    return pool;
}

std::vector<ClassSeed> histogram_peak_seeds(const Image2D& image, int smoothing_window) {
    if (smoothing_window < 1) {
        throw DataError("smoothing window must be >= 1");
    }
    std::array<std::uint64_t, 256> histogram{};
    for (std::uint8_t v : image.data()) ++histogram[v];

    // Centered moving average; bins outside [0,255] count as zero.
    std::array<double, 256> smoothed{};
    const int half = smoothing_window / 2;
    for (int i = 0; i < 256; ++i) {
        double sum = 0.0;
        for (int j = i - half; j <= i + half; ++j) {
            if (j >= 0 && j < 256) sum += static_cast<double>(histogram[j]);
        }
        smoothed[i] = sum / static_cast<double>(smoothing_window);
    }

    // Local maxima, plateau-aware: a run of equal bins is one peak
    // (reported at its center) when both flanking bins are lower.
    std::vector<int> peaks;
    for (int i = 0; i < 256;) {
        int j = i;
        while (j + 1 < 256 && smoothed[j + 1] == smoothed[i]) ++j;
        double left = i > 0 ? smoothed[i - 1] : -1.0;
        double right = j < 255 ? smoothed[j + 1] : -1.0;
        if (smoothed[i] > 0.0 && smoothed[i] > left && smoothed[i] > right) {
            peaks.push_back((i + j) / 2);
        }
        i = j + 1;
    }
    if (peaks.size() < 3) {
        throw AlgorithmError("insufficient histogram peaks: found " +
                             std::to_string(peaks.size()) + ", need 3");
    }
    std::stable_sort(peaks.begin(), peaks.end(), [&](int a, int b) {
        return smoothed[a] > smoothed[b];
    });
    std::array<int, 3> chosen = {peaks[0], peaks[1], peaks[2]};
    std::sort(chosen.begin(), chosen.end());

    // Map each peak intensity to the first row-major pixel holding it,
    // falling back to the nearest intensity that exists in the image.
    std::vector<ClassSeed> seeds;
    for (std::uint8_t c = 1; c <= 3; ++c) {
        int target = chosen[c - 1];
        int best = -1;
        for (int delta = 0; delta < 256 && best < 0; ++delta) {
            for (int candidate : {target - delta, target + delta}) {
                if (candidate >= 0 && candidate < 256 && histogram[candidate] > 0) {
                    best = candidate;
                    break;
                }
            }
        }
        Point where{};
        for (int y = 0; y < image.height() && best >= 0; ++y) {
            bool found = false;
            for (int x = 0; x < image.width(); ++x) {
                if (image.at(x, y) == best) {
                    where = {x, y};
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
        seeds.push_back({c, where});
    }
    return seeds;
}

std::vector<ClassSeed> random_seeds(const CandidatePool& pool, std::uint64_t rng_seed) {
    for (std::uint8_t c = 1; c <= 3; ++c) {
        if (pool.for_class(c).empty()) {
            throw AlgorithmError(std::string("empty candidate pool for ") + class_name(c));
        }
    }
    Rng rng(rng_seed);
    std::vector<ClassSeed> seeds;
    for (std::uint8_t c = 1; c <= 3; ++c) {
        const auto& candidates = pool.for_class(c);
        seeds.push_back({c, candidates[rng.bounded(candidates.size())]});
    }
    return seeds;
}

}  // namespace segseed
