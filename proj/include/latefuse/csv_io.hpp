#pragma once

#include <string>
#include <vector>

#include "latefuse/types.hpp"
#include "latefuse/windowing.hpp"

namespace latefuse {

// CSV layouts. Line 1 is a `# key=value ...` metadata comment, line 2 the
// column header, then one data line per frame. Values carry 9 decimal digits.
//
//   scores:   # model=<id> video=<id> rate_hz=<r> normalized=<0|1>
//             frame,score_0,...,score_6
//   labels:   # video=<id> rate_hz=<r>
//             frame,label            (label in {-1, 0..6})
//   features: # video=<id> rate_hz=<r> dim=<D>
//             frame,f_0,...,f_{D-1}
//   pooled:   # video=<id> rate_hz=<r> dim=<D>
//             start_s,end_s,label,p_0,...,p_{2D-1}

/// Loads and validates a score track. A non-empty model_id overrides the
/// file's `model=` metadata.
ScoreTrack load_score_track(const std::string& path, const std::string& model_id = "");
void write_score_track(const std::string& path, const ScoreTrack& track);

LabelTrack load_label_track(const std::string& path);
void write_label_track(const std::string& path, const LabelTrack& track);

FeatureTrack load_feature_track(const std::string& path);
void write_feature_track(const std::string& path, const FeatureTrack& track);

/// Pooled-segment files carry the source dim D; each row holds 2D values.
std::vector<PooledSegment> load_pooled_segments(const std::string& path,
                                                std::string* video_id = nullptr,
                                                double* rate_hz = nullptr,
                                                std::size_t* dim = nullptr);
void write_pooled_segments(const std::string& path,
                           const std::vector<PooledSegment>& segments,
                           const std::string& video_id, double rate_hz, std::size_t dim);

/// True if the file's header names a label track rather than a score track.
bool is_label_file(const std::string& path);

/// Writes `text` to `path` atomically (temp file in the same directory, then
/// rename), so readers never observe partial output.
void write_file_atomic(const std::string& path, const std::string& text);

}  // namespace latefuse
