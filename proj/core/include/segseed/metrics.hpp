#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "segseed/image.hpp"

namespace segseed {

/// Per-class and pooled comparison of a produced segmentation against a
/// reference. Arrays are indexed [0]=CSF, [1]=GM, [2]=WM.
struct EvalReport {
    double rms_overall = 0.0;
    std::array<double, kNumTissueClasses> rms_per_class{};
    std::array<double, kNumTissueClasses> dice_per_class{};
    std::size_t pixel_count = 0;
};

/// Root-mean-square of per-pixel binary-mask differences, per class and
/// pooled over all three classes; Dice overlap per class (1 when both
/// masks are empty).
EvalReport rms_error(const LabelMap& produced, const LabelMap& reference);

std::string eval_csv_header();
std::string to_csv_row(const EvalReport& report);
std::string to_text(const EvalReport& report);

}  // namespace segseed
