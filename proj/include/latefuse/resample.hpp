#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "latefuse/types.hpp"

namespace latefuse {

/// Output length after resampling T source frames: ceil(T * target / source).
std::size_t resampled_length(std::size_t source_frames, double source_rate_hz,
                             double target_rate_hz);

/// Source index whose timestamp m/source_rate is nearest to n/target_rate,
/// ties to the earlier entry, clamped to [0, source_frames).
std::size_t nearest_source_index(std::size_t n, double source_rate_hz,
                                 double target_rate_hz, std::size_t source_frames);

/// Nearest-timestamp selection; no interpolation. Resampling at the source
/// rate returns the track unchanged.
ScoreTrack resample_track(const ScoreTrack& track, double target_rate_hz);
LabelTrack resample_track(const LabelTrack& track, double target_rate_hz);

/// Resamples labels and every score track to rate_hz and truncates all of
/// them to the shortest resulting length. Model order is preserved.
AlignedDataset align(const LabelTrack& labels, std::vector<ScoreTrack> scores,
                     double rate_hz);

/// One window-level prediction to be broadcast over the frames it covers.
struct WindowPrediction {
    double start_s = 0.0;
    double end_s = 0.0;
    std::array<double, kNumClasses> scores{};
};

/// Maps window-level score rows back to frame rate. Each frame takes the row
/// of the latest-starting window covering its timestamp; frames outside every
/// window take the nearest window's row.
ScoreTrack expand_window_predictions(const std::vector<WindowPrediction>& windows,
                                     double rate_hz, std::size_t total_frames);

}  // namespace latefuse
