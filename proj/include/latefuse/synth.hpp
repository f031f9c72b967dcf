#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "latefuse/types.hpp"

namespace latefuse {

/// Recipe for a synthetic aligned dataset. Each model's argmax matches the
/// true class with the configured per-class reliability; everything is
/// deterministic given the seed.
struct ScenarioConfig {
    std::uint64_t seed = 0;
    std::size_t num_frames = 0;
    double rate_hz = 5.0;
    std::string video_id = "synth";
    std::vector<double> class_priors;   // kNumClasses entries, sum 1 within 1e-12
    std::vector<double> reliability;    // num_models x kNumClasses, entries in [0, 1]
    double confidence_sharpness = 0.75; // argmax mass per row, in (0.5, 1]
    std::vector<std::string> model_ids; // optional; defaults to model_1..model_L

    std::size_t num_models() const { return reliability.size() / kNumClasses; }
    void validate() const;
};

ScenarioConfig load_scenario_config(const std::string& path);
void save_scenario_config(const std::string& path, const ScenarioConfig& config);

/// Frame t uses RNG substream(seed, t). Within a frame the draw order is
/// fixed: truth label (inverse CDF over priors), then per model a
/// correctness uniform, a wrong-class pick, and kNumClasses-1 noise
/// exponentials, drawn unconditionally so the stream layout never depends
/// on earlier outcomes. The argmax class receives confidence_sharpness and
/// the rest split the remainder; rows are rounded to 9 decimals with the
/// argmax class absorbing the rounding so every row sums to 1 exactly at
/// that precision.
AlignedDataset generate_scenario(const ScenarioConfig& config);

}  // namespace latefuse
