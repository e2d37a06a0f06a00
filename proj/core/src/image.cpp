#include "segseed/image.hpp"

#include <string>

namespace segseed {

namespace {

void check_dims(int width, int height) {
    if (width < 1 || height < 1) {
        throw DataError("image dimensions must be >= 1, got " +
                        std::to_string(width) + "x" + std::to_string(height));
    }
}

}  // namespace

Image2D::Image2D(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
    check_dims(width, height);
    data_.assign(pixel_count(), fill);
}

Image2D::Image2D(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height);
    if (data_.size() != pixel_count()) {
        throw DataError("image data length " + std::to_string(data_.size()) +
                        " does not match " + std::to_string(width) + "x" +
                        std::to_string(height));
    }
}

LabelMap::LabelMap(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
    check_dims(width, height);
    if (fill > 3) {
        throw DataError("label code " + std::to_string(fill) + " out of range {0..3}");
    }
    labels_.assign(pixel_count(), fill);
}

LabelMap::LabelMap(int width, int height, std::vector<std::uint8_t> labels)
    : width_(width), height_(height), labels_(std::move(labels)) {
    check_dims(width, height);
    if (labels_.size() != pixel_count()) {
        throw DataError("label data length " + std::to_string(labels_.size()) +
                        " does not match " + std::to_string(width) + "x" +
                        std::to_string(height));
    }
    for (std::uint8_t code : labels_) {
        if (code > 3) {
            throw DataError("label code " + std::to_string(code) + " out of range {0..3}");
        }
    }
}

Image2D mask_of_class(const LabelMap& labels, std::uint8_t cls) {
    if (cls < 1 || cls > 3) {
        throw DataError("invalid class code " + std::to_string(cls) +
                        ", expected 1 (CSF), 2 (GM) or 3 (WM)");
    }
    std::vector<std::uint8_t> mask(labels.pixel_count());
    const auto& src = labels.labels();
    for (std::size_t i = 0; i < src.size(); ++i) {
        mask[i] = src[i] == cls ? 1 : 0;
    }
    return Image2D(labels.width(), labels.height(), std::move(mask));
}

}  // namespace segseed
