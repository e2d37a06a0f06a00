#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "segseed/image.hpp"

namespace segseed {

enum class PhantomGeometry : std::uint8_t {
    concentric,  // nested ellipses: WM core, GM ring, CSF ring, background
    blobs,       // three disjoint random ellipses on background
};

PhantomGeometry geometry_from_string(const std::string& name);
const char* to_string(PhantomGeometry geometry);

struct PhantomSpec {
    int width = 128;
    int height = 128;
    std::array<std::uint8_t, kNumTissueClasses> class_means = {40, 120, 220};  // CSF, GM, WM
    double noise_std = 0.0;
    PhantomGeometry geometry = PhantomGeometry::concentric;
    std::uint64_t rng_seed = 0;
    bool require_separable = false;  // assert means pairwise >= 4 * noise_std apart
};

struct Phantom {
    Image2D image;
    LabelMap labels;
};

/// Draws the ground-truth label map from the geometry, then renders the
/// image as per-pixel class mean plus Gaussian noise, clamped to [0,255].
/// Deterministic for a fixed rng_seed. Every class covers >= 1% of pixels.
Phantom generate(const PhantomSpec& spec);

}  // namespace segseed
