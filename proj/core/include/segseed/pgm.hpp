#pragma once

#include <filesystem>

#include "segseed/image.hpp"

namespace segseed {

/// Reads a binary 8-bit PGM (magic "P5", maxval 255). Pixel values are
/// taken byte for byte, no rescaling.
Image2D load_pgm(const std::filesystem::path& path);

/// Writes a binary 8-bit PGM. Round-trips bit-exact through load_pgm.
void save_pgm(const Image2D& image, const std::filesystem::path& path);

/// Label maps travel as PGM with pixel values equal to class codes {0..3}.
LabelMap load_label_pgm(const std::filesystem::path& path);
void save_label_pgm(const LabelMap& labels, const std::filesystem::path& path);

}  // namespace segseed
