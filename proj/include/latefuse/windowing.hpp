#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "latefuse/types.hpp"

namespace latefuse {

/// Fixed-length window grid. hop_s = length_s * (1 - overlap_fraction).
struct WindowSpec {
    double length_s = 4.0;
    double overlap_fraction = 0.0;

    double hop_s() const { return length_s * (1.0 - overlap_fraction); }
    void validate() const;
};

struct TimeWindow {
    double start_s = 0.0;
    double end_s = 0.0;
};

/// A window's mean||STD feature vector plus its majority label.
struct PooledSegment {
    double start_s = 0.0;
    double end_s = 0.0;
    int label = kIgnoreLabel;
    std::vector<double> pooled;  // dim 2D: means then population STDs
};

/// Windows starting at n*hop_s while start + length_s <= duration + 1e-9.
/// A duration shorter than one window yields a single short window instead
/// of being dropped.
std::vector<TimeWindow> segment_windows(double total_duration_s, const WindowSpec& spec);

/// Pools an S x dim frame block into a 2*dim vector: per-dimension means
/// followed by per-dimension population standard deviations. A dimension
/// whose values are all equal pools to exactly that value and zero spread.
std::vector<double> pool_mean_std(std::span<const double> frames, std::size_t dim);

/// Most frequent non-ignore class; ties go to the smaller index. A window of
/// only ignore labels stays ignore.
int majority_label(std::span<const int> labels);

/// Half-open frame index range [first, last) whose timestamps n/rate_hz fall
/// in [start_s, end_s), clamped to [0, total_frames).
std::pair<std::size_t, std::size_t> frames_in_window(double start_s, double end_s,
                                                     double rate_hz,
                                                     std::size_t total_frames);

/// Segments an aligned feature/label pair and pools every non-empty window.
std::vector<PooledSegment> pool_track(const FeatureTrack& features,
                                      const LabelTrack& labels, const WindowSpec& spec);

}  // namespace latefuse
