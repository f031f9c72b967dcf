#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace latefuse {

inline constexpr int kNumClasses = 7;
inline constexpr int kIgnoreLabel = -1;

/// Default class order. Index 0..6 maps to these names unless a label-map
/// file overrides the bijection.
const std::array<std::string, kNumClasses>& default_class_names();

class ClassMap {
public:
    ClassMap();

    /// Loads a label-map CSV with one `index,name` line per class. The file
    /// must define all 7 indices exactly once.
    static ClassMap load(const std::string& path);

    const std::string& name_of(int index) const;
    int index_of(const std::string& name) const;  // -1 if unknown
    const std::array<std::string, kNumClasses>& names() const { return names_; }

private:
    std::array<std::string, kNumClasses> names_;
};

/// Per-frame class-confidence rows of one model on a stated timebase.
struct ScoreTrack {
    std::string model_id;
    std::string video_id;
    double rate_hz = 0.0;
    bool normalized = false;
    std::vector<double> scores;  // num_frames x kNumClasses, row-major

    std::size_t num_frames() const { return scores.size() / kNumClasses; }
    double score(std::size_t t, int k) const { return scores[t * kNumClasses + k]; }
    double& score(std::size_t t, int k) { return scores[t * kNumClasses + k]; }
    const double* row(std::size_t t) const { return scores.data() + t * kNumClasses; }
    double* row(std::size_t t) { return scores.data() + t * kNumClasses; }

    void validate() const;
};

/// Per-frame class labels; kIgnoreLabel marks frames excluded from metrics.
struct LabelTrack {
    std::string video_id;
    double rate_hz = 0.0;
    std::vector<int> labels;

    std::size_t num_frames() const { return labels.size(); }
    void validate() const;
};

/// Frame-level feature vectors (deep embeddings) of one video.
struct FeatureTrack {
    std::string video_id;
    double rate_hz = 0.0;
    std::size_t dim = 0;
    std::vector<double> features;  // num_frames x dim, row-major

    std::size_t num_frames() const { return dim == 0 ? 0 : features.size() / dim; }
    const double* frame(std::size_t t) const { return features.data() + t * dim; }

    void validate() const;
};

/// Label track plus L model score tracks on a common timebase and length.
/// Model order is stable; fusion weights index into it.
struct AlignedDataset {
    double rate_hz = 5.0;
    LabelTrack labels;
    std::vector<ScoreTrack> models;

    std::size_t num_frames() const { return labels.labels.size(); }
    std::size_t num_models() const { return models.size(); }

    void validate() const;
};

}  // namespace latefuse
