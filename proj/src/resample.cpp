#include "latefuse/resample.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

namespace latefuse {

namespace {

void check_target_rate(double target_rate_hz) {
    if (target_rate_hz <= 0.0) {
        throw std::invalid_argument("target rate_hz must be > 0");
    }
}

}  // namespace

std::size_t resampled_length(std::size_t source_frames, double source_rate_hz,
                             double target_rate_hz) {
    const double exact =
        static_cast<double>(source_frames) * target_rate_hz / source_rate_hz;
    const double c = std::ceil(exact - 1e-9);
    return c <= 1.0 ? 1 : static_cast<std::size_t>(c);
}

std::size_t nearest_source_index(std::size_t n, double source_rate_hz,
                                 double target_rate_hz, std::size_t source_frames) {
    // Distances are compared as |n*source - m*target|, the common-denominator
    // form of |n/target - m/source|, so exact ties stay exact.
    const double pos = static_cast<double>(n) * source_rate_hz;
    double m = std::floor(pos / target_rate_hz);
    if (m < 0.0) {
        m = 0.0;
    }
    const double below = pos - m * target_rate_hz;
    const double above = (m + 1.0) * target_rate_hz - pos;
    std::size_t index = static_cast<std::size_t>(m);
    if (above < below) {
        ++index;
    }
    return std::min(index, source_frames - 1);
}

ScoreTrack resample_track(const ScoreTrack& track, double target_rate_hz) {
    check_target_rate(target_rate_hz);
    track.validate();
    if (track.rate_hz == target_rate_hz) {
        return track;
    }
    ScoreTrack out;
    out.model_id = track.model_id;
    out.video_id = track.video_id;
    out.rate_hz = target_rate_hz;
    out.normalized = track.normalized;
    const std::size_t frames = resampled_length(track.num_frames(), track.rate_hz, target_rate_hz);
    out.scores.resize(frames * kNumClasses);
    for (std::size_t n = 0; n < frames; ++n) {
        const std::size_t m = nearest_source_index(n, track.rate_hz, target_rate_hz,
                                                   track.num_frames());
        std::memcpy(out.row(n), track.row(m), kNumClasses * sizeof(double));
    }
    return out;
}

LabelTrack resample_track(const LabelTrack& track, double target_rate_hz) {
    check_target_rate(target_rate_hz);
    track.validate();
    if (track.rate_hz == target_rate_hz) {
        return track;
    }
    LabelTrack out;
    out.video_id = track.video_id;
    out.rate_hz = target_rate_hz;
    const std::size_t frames = resampled_length(track.num_frames(), track.rate_hz, target_rate_hz);
    out.labels.resize(frames);
    for (std::size_t n = 0; n < frames; ++n) {
        out.labels[n] =
            track.labels[nearest_source_index(n, track.rate_hz, target_rate_hz,
                                              track.num_frames())];
    }
    return out;
}

AlignedDataset align(const LabelTrack& labels, std::vector<ScoreTrack> scores,
                     double rate_hz) {
    check_target_rate(rate_hz);
    if (scores.empty()) {
        throw std::invalid_argument("align: needs at least one score track");
    }
    for (const ScoreTrack& track : scores) {
        if (track.video_id != labels.video_id) {
            throw std::invalid_argument("align: model " + track.model_id + " is for video " +
                                        track.video_id + ", labels for " + labels.video_id);
        }
    }

    AlignedDataset dataset;
    dataset.rate_hz = rate_hz;
    dataset.labels = resample_track(labels, rate_hz);
    std::size_t frames = dataset.labels.num_frames();
    for (ScoreTrack& track : scores) {
        dataset.models.push_back(resample_track(track, rate_hz));
        frames = std::min(frames, dataset.models.back().num_frames());
    }
    if (frames == 0) {
        throw std::invalid_argument("align: a track is empty after truncation");
    }
    dataset.labels.labels.resize(frames);
    for (ScoreTrack& track : dataset.models) {
        track.scores.resize(frames * kNumClasses);
    }
    dataset.validate();
    return dataset;
}

ScoreTrack expand_window_predictions(const std::vector<WindowPrediction>& windows,
                                     double rate_hz, std::size_t total_frames) {
    check_target_rate(rate_hz);
    if (windows.empty()) {
        throw std::invalid_argument("expand_window_predictions: empty window list");
    }
    if (total_frames == 0) {
        throw std::invalid_argument("expand_window_predictions: total_frames must be > 0");
    }
    for (std::size_t i = 0; i < windows.size(); ++i) {
        if (windows[i].start_s < 0.0 || windows[i].end_s <= windows[i].start_s) {
            throw std::invalid_argument("expand_window_predictions: window " +
                                        std::to_string(i) + " has an invalid time span");
        }
        if (i > 0 && windows[i].start_s < windows[i - 1].start_s) {
            throw std::invalid_argument("expand_window_predictions: windows not sorted by start");
        }
    }

    ScoreTrack out;
    out.model_id = "window-expanded";
    out.rate_hz = rate_hz;
    out.scores.resize(total_frames * kNumClasses);
    for (std::size_t t = 0; t < total_frames; ++t) {
        const double ts = static_cast<double>(t) / rate_hz;
        // Windows are sorted by start, so the last covering window in list
        // order is the latest-starting one.
        const WindowPrediction* chosen = nullptr;
        for (auto it = windows.rbegin(); it != windows.rend(); ++it) {
            if (it->start_s <= ts) {
                if (ts < it->end_s) {
                    chosen = &*it;
                }
                if (chosen != nullptr) {
                    break;
                }
            }
        }
        if (chosen == nullptr) {
            // Covered by nothing: take the nearest window, earlier wins ties.
            double best = 0.0;
            for (const WindowPrediction& w : windows) {
                const double dist = ts < w.start_s ? w.start_s - ts
                                    : ts >= w.end_s ? ts - w.end_s
                                                    : 0.0;
                if (chosen == nullptr || dist < best) {
                    chosen = &w;
                    best = dist;
                }
            }
        }
        std::memcpy(out.row(t), chosen->scores.data(), kNumClasses * sizeof(double));
    }
    out.validate();
    return out;
}

}  // namespace latefuse
