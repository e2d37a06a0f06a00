#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "segseed/image.hpp"
#include "segseed/region_grow.hpp"

namespace segseed {

/// Closed intensity interval [lo, hi].
struct Band {
    int lo = 0;
    int hi = 0;
};

/// Per-class intensity bands, pairwise disjoint, ordered CSF, GM, WM.
struct ThresholdBands {
    Band csf{0, 84};
    Band gm{85, 169};
    Band wm{170, 255};

    const Band& for_class(std::uint8_t cls) const;
    void validate() const;

    /// Parses "lo,hi,lo,hi,lo,hi" in class order CSF, GM, WM.
    static ThresholdBands parse(const std::string& text);
    std::string to_string() const;
};

/// Per-class candidate seed positions, the GA's search space.
/// by_class[0] holds CSF candidates, [1] GM, [2] WM.
struct CandidatePool {
    std::array<std::vector<Point>, kNumTissueClasses> by_class;

    const std::vector<Point>& for_class(std::uint8_t cls) const {
        return by_class[cls - 1];
    }
};

/// All pixels whose intensity falls in each class band. Every class list
/// must end up non-empty.
CandidatePool pool_from_thresholds(const Image2D& image, const ThresholdBands& bands);

/// Seeds from the three tallest local maxima of the smoothed 256-bin
/// histogram, ordered by intensity ascending (CSF, GM, WM). Each seed is
/// the first row-major pixel at the peak intensity, falling back to the
/// nearest existing intensity.
std::vector<ClassSeed> histogram_peak_seeds(const Image2D& image,
                                            int smoothing_window = 5);

/// One uniformly drawn point per class. Deterministic for a fixed rng_seed.
std::vector<ClassSeed> random_seeds(const CandidatePool& pool, std::uint64_t rng_seed);

}  // namespace segseed
