#include "latefuse/windowing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace latefuse {

namespace {

constexpr double kTimeEps = 1e-9;

// Smallest integer n with n >= x, tolerant of float noise just below an
// integer boundary.
std::size_t ceil_index(double x) {
    const double c = std::ceil(x - kTimeEps);
    return c <= 0.0 ? 0 : static_cast<std::size_t>(c);
}

}  // namespace

void WindowSpec::validate() const {
    if (length_s <= 0.0) {
        throw std::invalid_argument("window length_s must be > 0");
    }
    if (overlap_fraction < 0.0 || overlap_fraction >= 1.0) {
        throw std::invalid_argument("overlap_fraction must be in [0, 1)");
    }
    if (hop_s() <= 0.0) {
        throw std::invalid_argument("window hop must be > 0");
    }
}

std::vector<TimeWindow> segment_windows(double total_duration_s, const WindowSpec& spec) {
    spec.validate();
    if (total_duration_s <= 0.0) {
        throw std::invalid_argument("total_duration_s must be > 0");
    }
    std::vector<TimeWindow> windows;
    const double hop = spec.hop_s();
    for (std::size_t n = 0;; ++n) {
        const double start = static_cast<double>(n) * hop;
        if (start + spec.length_s > total_duration_s + kTimeEps) {
            break;
        }
        windows.push_back({start, start + spec.length_s});
    }
    if (windows.empty()) {
        windows.push_back({0.0, total_duration_s});
    }
    return windows;
}

std::vector<double> pool_mean_std(std::span<const double> frames, std::size_t dim) {
    if (dim == 0) {
        throw std::invalid_argument("pool_mean_std: dim must be > 0");
    }
    if (frames.empty() || frames.size() % dim != 0) {
        throw std::invalid_argument("pool_mean_std: frame block is empty or ragged");
    }
    const std::size_t count = frames.size() / dim;
    std::vector<double> pooled(2 * dim);
    const double inv = 1.0 / static_cast<double>(count);
    const double* data = frames.data();

#pragma omp parallel for schedule(static)
    for (std::int64_t d = 0; d < static_cast<std::int64_t>(dim); ++d) {
        double sum = 0.0;
        double lo = data[d];
        double hi = data[d];
        for (std::size_t s = 0; s < count; ++s) {
            const double v = data[s * dim + d];
            sum += v;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (lo == hi) {
            // A constant dimension must come out with exactly zero spread, so
            // bypass the summed mean, which can be off by an ulp.
            pooled[d] = lo;
            pooled[dim + d] = 0.0;
            continue;
        }
        const double mean = sum * inv;
        double sq = 0.0;
        for (std::size_t s = 0; s < count; ++s) {
            const double diff = data[s * dim + d] - mean;
            sq += diff * diff;
        }
        pooled[d] = mean;
        pooled[dim + d] = std::sqrt(sq * inv);
    }
    return pooled;
}

int majority_label(std::span<const int> labels) {
    if (labels.empty()) {
        throw std::invalid_argument("majority_label: empty window");
    }
    std::array<std::size_t, kNumClasses> counts{};
    for (const int v : labels) {
        if (v == kIgnoreLabel) {
            continue;
        }
        if (v < 0 || v >= kNumClasses) {
            throw std::invalid_argument("majority_label: invalid label " + std::to_string(v));
        }
        ++counts[v];
    }
    int best = kIgnoreLabel;
    std::size_t best_count = 0;
    for (int k = 0; k < kNumClasses; ++k) {
        if (counts[k] > best_count) {
            best = k;
            best_count = counts[k];
        }
    }
    return best;
}

std::pair<std::size_t, std::size_t> frames_in_window(double start_s, double end_s,
                                                     double rate_hz,
                                                     std::size_t total_frames) {
    const std::size_t first = std::min(ceil_index(start_s * rate_hz), total_frames);
    const std::size_t last = std::min(ceil_index(end_s * rate_hz), total_frames);
    return {first, std::max(first, last)};
}

std::vector<PooledSegment> pool_track(const FeatureTrack& features,
                                      const LabelTrack& labels, const WindowSpec& spec) {
    features.validate();
    labels.validate();
    if (features.rate_hz != labels.rate_hz) {
        throw std::invalid_argument("pool_track: feature rate " +
                                    std::to_string(features.rate_hz) +
                                    " Hz differs from label rate " +
                                    std::to_string(labels.rate_hz) + " Hz");
    }
    if (features.num_frames() != labels.num_frames()) {
        throw std::invalid_argument("pool_track: " + std::to_string(features.num_frames()) +
                                    " feature frames vs " +
                                    std::to_string(labels.num_frames()) + " labels");
    }

    const std::size_t frames = features.num_frames();
    const double duration = static_cast<double>(frames) / features.rate_hz;
    std::vector<PooledSegment> segments;
    for (const TimeWindow& w : segment_windows(duration, spec)) {
        const auto [first, last] = frames_in_window(w.start_s, w.end_s, features.rate_hz, frames);
        if (first >= last) {
            continue;  // no frame timestamp falls inside this window
        }
        PooledSegment seg;
        seg.start_s = w.start_s;
        seg.end_s = w.end_s;
        seg.pooled = pool_mean_std(
            std::span<const double>(features.frame(first), (last - first) * features.dim),
            features.dim);
        seg.label = majority_label(
            std::span<const int>(labels.labels.data() + first, last - first));
        segments.push_back(std::move(seg));
    }
    return segments;
}

}  // namespace latefuse
