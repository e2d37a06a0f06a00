#include "segseed/phantom.hpp"

#include <algorithm>
#include <cmath>

#include "segseed/rng.hpp"

namespace segseed {

namespace {

struct Ellipse {
    double cx, cy, rx, ry;

    bool contains(int x, int y) const {
        double dx = (x - cx) / rx;
        double dy = (y - cy) / ry;
        return dx * dx + dy * dy <= 1.0;
    }
};

LabelMap concentric_labels(int width, int height) {
    const double cx = (width - 1) / 2.0;
    const double cy = (height - 1) / 2.0;
    Ellipse csf{cx, cy, 0.45 * width, 0.45 * height};
    Ellipse gm{cx, cy, 0.34 * width, 0.34 * height};
    Ellipse wm{cx, cy, 0.20 * width, 0.20 * height};

    LabelMap labels(width, height, 0);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            if (wm.contains(x, y)) labels.at(x, y) = 3;
            else if (gm.contains(x, y)) labels.at(x, y) = 2;
            else if (csf.contains(x, y)) labels.at(x, y) = 1;
        }
    }
    return labels;
}

LabelMap blob_labels(int width, int height, Rng& rng) {
    LabelMap labels(width, height, 0);
    // Place CSF, GM, WM ellipses in turn, rejecting placements that touch
    // an earlier blob (1-pixel margin keeps the regions non-adjacent).
    for (std::uint8_t cls = 1; cls <= 3; ++cls) {
        bool placed = false;
        for (int attempt = 0; attempt < 2000 && !placed; ++attempt) {
            double rx = (0.10 + 0.08 * rng.unit()) * width;
            double ry = (0.10 + 0.08 * rng.unit()) * height;
            double cx = rx + 1.0 + rng.unit() * (width - 2.0 * (rx + 1.0));
            double cy = ry + 1.0 + rng.unit() * (height - 2.0 * (ry + 1.0));
            Ellipse e{cx, cy, rx, ry};

            bool clash = false;
            int x0 = std::max(0, static_cast<int>(cx - rx) - 1);
            int x1 = std::min(width - 1, static_cast<int>(cx + rx) + 1);
            int y0 = std::max(0, static_cast<int>(cy - ry) - 1);
            int y1 = std::min(height - 1, static_cast<int>(cy + ry) + 1);
            for (int y = y0; y <= y1 && !clash; ++y) {
                for (int x = x0; x <= x1 && !clash; ++x) {
                    if (!e.contains(x, y)) continue;
                    for (int dy = -1; dy <= 1 && !clash; ++dy) {
                        for (int dx = -1; dx <= 1 && !clash; ++dx) {
                            int nx = x + dx, ny = y + dy;
                            if (nx < 0 || nx >= width || ny < 0 || ny >= height) continue;
                            if (labels.at(nx, ny) != 0) clash = true;
                        }
                    }
                }
            }
            if (clash) continue;

            for (int y = y0; y <= y1; ++y) {
                for (int x = x0; x <= x1; ++x) {
                    if (e.contains(x, y)) labels.at(x, y) = cls;
                }
            }
            placed = true;
        }
        if (!placed) {
            throw AlgorithmError("cannot place three disjoint blobs at " +
                                 std::to_string(width) + "x" + std::to_string(height));
        }
    }
    return labels;
}

}  // namespace

PhantomGeometry geometry_from_string(const std::string& name) {
    if (name == "concentric") return PhantomGeometry::concentric;
    if (name == "blobs") return PhantomGeometry::blobs;
    throw DataError("unknown geometry \"" + name + "\", expected concentric or blobs");
}

const char* to_string(PhantomGeometry geometry) {
    return geometry == PhantomGeometry::concentric ? "concentric" : "blobs";
}

Phantom generate(const PhantomSpec& spec) {
    if (spec.width < 16 || spec.height < 16) {
        throw DataError("phantom size " + std::to_string(spec.width) + "x" +
                        std::to_string(spec.height) +
                        " too small to fit three classes, need >= 16x16");
    }
    if (spec.noise_std < 0.0) throw DataError("noise_std must be >= 0");
    if (spec.require_separable) {
        for (int a = 0; a < 3; ++a) {
            for (int b = a + 1; b < 3; ++b) {
                double gap = std::abs(static_cast<double>(spec.class_means[a]) -
                                      static_cast<double>(spec.class_means[b]));
                if (gap < 4.0 * spec.noise_std) {
                    throw DataError("class means " + std::to_string(spec.class_means[a]) +
                                    " and " + std::to_string(spec.class_means[b]) +
                                    " closer than 4*noise_std");
                }
            }
        }
    }

    Rng rng(spec.rng_seed);
    LabelMap labels = spec.geometry == PhantomGeometry::concentric
                          ? concentric_labels(spec.width, spec.height)
                          : blob_labels(spec.width, spec.height, rng);

    std::array<std::size_t, 4> class_counts{};
    for (std::uint8_t code : labels.labels()) ++class_counts[code];
    for (std::uint8_t c = 1; c <= 3; ++c) {
        if (class_counts[c] * 100 < labels.pixel_count()) {
            throw AlgorithmError("class " + std::to_string(c) +
                                 " covers less than 1% of the phantom");
        }
    }

    Image2D image(spec.width, spec.height, 0);
    for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
            std::uint8_t code = labels.at(x, y);
            double mean = code == 0 ? 0.0 : static_cast<double>(spec.class_means[code - 1]);
            double value = mean;
            if (spec.noise_std > 0.0) value += spec.noise_std * rng.gaussian();
            value = std::clamp(std::round(value), 0.0, 255.0);
            image.at(x, y) = static_cast<std::uint8_t>(value);
        }
    }
    return Phantom{std::move(image), std::move(labels)};
}

}  // namespace segseed
