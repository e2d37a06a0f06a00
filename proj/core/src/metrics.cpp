#include "segseed/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace segseed {

EvalReport rms_error(const LabelMap& produced, const LabelMap& reference) {
    if (produced.width() != reference.width() || produced.height() != reference.height()) {
        throw DataError("dimension mismatch: produced " + std::to_string(produced.width()) +
                        "x" + std::to_string(produced.height()) + " vs reference " +
                        std::to_string(reference.width()) + "x" +
                        std::to_string(reference.height()));
    }

    EvalReport report;
    report.pixel_count = produced.pixel_count();
    const auto& p = produced.labels();
    const auto& g = reference.labels();
    const double n = static_cast<double>(report.pixel_count);

    std::uint64_t total_mismatch = 0;
    for (std::uint8_t c = 1; c <= 3; ++c) {
        std::uint64_t mismatch = 0;
        std::uint64_t intersection = 0;
        std::uint64_t p_size = 0;
        std::uint64_t g_size = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            bool in_p = p[i] == c;
            bool in_g = g[i] == c;
            p_size += in_p;
            g_size += in_g;
            intersection += in_p && in_g;
            mismatch += in_p != in_g;
        }
        total_mismatch += mismatch;
        report.rms_per_class[c - 1] = std::sqrt(static_cast<double>(mismatch) / n);
        report.dice_per_class[c - 1] =
            p_size + g_size == 0
                ? 1.0
                : 2.0 * static_cast<double>(intersection) /
                      static_cast<double>(p_size + g_size);
    }
    report.rms_overall = std::sqrt(static_cast<double>(total_mismatch) / (3.0 * n));
    return report;
}

std::string eval_csv_header() {
    return "rms_overall,rms_csf,rms_gm,rms_wm,dice_csf,dice_gm,dice_wm,pixel_count";
}

std::string to_csv_row(const EvalReport& report) {
    std::ostringstream out;
    out << std::setprecision(10) << report.rms_overall;
    for (double v : report.rms_per_class) out << "," << v;
    for (double v : report.dice_per_class) out << "," << v;
    out << "," << report.pixel_count;
    return out.str();
}

std::string to_text(const EvalReport& report) {
    static const char* names[] = {"CSF", "GM", "WM"};
    std::ostringstream out;
    out << std::setprecision(6);
    out << "RMS overall: " << report.rms_overall << "\n";
    for (int c = 0; c < 3; ++c) {
        out << names[c] << ": rms=" << report.rms_per_class[c]
            << " dice=" << report.dice_per_class[c] << "\n";
    }
    out << "pixels: " << report.pixel_count << "\n";
    return out.str();
}

}  // namespace segseed
