#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "latefuse/types.hpp"

namespace latefuse {

/// Challenge measure coefficients: cpm = 0.67 * weighted F1 + 0.33 * accuracy.
inline constexpr double kCpmF1Weight = 0.67;
inline constexpr double kCpmAccuracyWeight = 0.33;

struct EvalReport {
    // confusion[truth * kNumClasses + predicted]
    std::array<std::int64_t, kNumClasses * kNumClasses> confusion{};
    std::array<std::int64_t, kNumClasses> support{};
    std::array<double, kNumClasses> per_class_f1{};
    double accuracy = 0.0;
    double weighted_f1 = 0.0;
    double cpm = 0.0;
    std::int64_t total = 0;  // evaluated (non-ignore) frames
};

/// Scores predictions against truth. Frames whose truth label is the ignore
/// marker are excluded; predictions on counted frames must be valid classes.
/// Per-class F1 is support-weighted into weighted_f1; classes with zero
/// support contribute nothing.
EvalReport evaluate(std::span<const int> predictions, const LabelTrack& truth);

/// Inverse-log class balancing, floored at 1.
struct ClassWeights {
    double r = 0.47;
    std::vector<double> weights;
};

/// weight_k = max(1, ln(r * N / counts_k)) with N the total count. Weights
/// never drop below 1 and never increase with class count.
ClassWeights log_class_weights(std::span<const std::int64_t> counts, double r = 0.47);

/// Report JSON with keys confusion, accuracy, per_class_f1, weighted_f1, cpm,
/// support; reals rounded to 6 decimals.
std::string report_to_json(const EvalReport& report);
void write_report(const std::string& path, const EvalReport& report);

}  // namespace latefuse
