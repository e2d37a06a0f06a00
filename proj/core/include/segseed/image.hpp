#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "segseed/errors.hpp"

namespace segseed {

/// Tissue class codes, ordered by the dark-to-bright MRI intensity
/// convention. Label maps carry these as raw pixel values.
enum class Tissue : std::uint8_t {
    background = 0,
    csf = 1,
    gm = 2,
    wm = 3,
};

inline constexpr std::uint8_t kNumTissueClasses = 3;  // csf, gm, wm

/// Pixel coordinate: x is the column, y is the row.
struct Point {
    int x = 0;
    int y = 0;

    bool operator==(const Point&) const = default;
};

/// 8-bit grayscale raster, row-major.
class Image2D {
public:
    Image2D() = default;
    Image2D(int width, int height, std::uint8_t fill = 0);
    Image2D(int width, int height, std::vector<std::uint8_t> data);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }

    bool in_bounds(Point p) const {
        return p.x >= 0 && p.x < width_ && p.y >= 0 && p.y < height_;
    }

    std::uint8_t at(int x, int y) const {
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }
    std::uint8_t& at(int x, int y) {
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }
    std::uint8_t at(Point p) const { return at(p.x, p.y); }

    const std::vector<std::uint8_t>& data() const { return data_; }

    bool operator==(const Image2D&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Per-pixel class assignment over the codes {0=background, 1=CSF, 2=GM, 3=WM}.
class LabelMap {
public:
    LabelMap() = default;
    LabelMap(int width, int height, std::uint8_t fill = 0);
    LabelMap(int width, int height, std::vector<std::uint8_t> labels);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }

    bool in_bounds(Point p) const {
        return p.x >= 0 && p.x < width_ && p.y >= 0 && p.y < height_;
    }

    std::uint8_t at(int x, int y) const {
        return labels_[static_cast<std::size_t>(y) * width_ + x];
    }
    std::uint8_t& at(int x, int y) {
        return labels_[static_cast<std::size_t>(y) * width_ + x];
    }
    std::uint8_t at(Point p) const { return at(p.x, p.y); }

    const std::vector<std::uint8_t>& labels() const { return labels_; }

    bool operator==(const LabelMap&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> labels_;
};

/// Binary mask of one tissue class: 1 where label == cls, else 0.
/// cls must be in {1,2,3}.
Image2D mask_of_class(const LabelMap& labels, std::uint8_t cls);

}  // namespace segseed
