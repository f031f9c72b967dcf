#include "latefuse/types.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace latefuse {

const std::array<std::string, kNumClasses>& default_class_names() {
    static const std::array<std::string, kNumClasses> kNames = {
        "Neutral", "Anger", "Disgust", "Fear", "Happiness", "Sadness", "Surprise"};
    return kNames;
}

ClassMap::ClassMap() : names_(default_class_names()) {}

ClassMap ClassMap::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open label map: " + path);
    }
    ClassMap map;
    std::array<bool, kNumClasses> seen{};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected `index,name`");
        }
        int index = -1;
        try {
            index = std::stoi(line.substr(0, comma));
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": bad class index");
        }
        if (index < 0 || index >= kNumClasses) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": class index out of range");
        }
        if (seen[index]) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": duplicate class index " + std::to_string(index));
        }
        seen[index] = true;
        map.names_[index] = line.substr(comma + 1);
    }
    for (int k = 0; k < kNumClasses; ++k) {
        if (!seen[k]) {
            throw std::runtime_error(path + ": label map is missing class " +
                                     std::to_string(k));
        }
    }
    return map;
}

const std::string& ClassMap::name_of(int index) const {
    if (index < 0 || index >= kNumClasses) {
        throw std::out_of_range("class index out of range: " + std::to_string(index));
    }
    return names_[index];
}

int ClassMap::index_of(const std::string& name) const {
    for (int k = 0; k < kNumClasses; ++k) {
        if (names_[k] == name) {
            return k;
        }
    }
    return -1;
}

void ScoreTrack::validate() const {
    if (rate_hz <= 0.0) {
        throw std::invalid_argument("score track " + model_id + ": rate_hz must be > 0");
    }
    if (scores.empty() || scores.size() % kNumClasses != 0) {
        throw std::invalid_argument("score track " + model_id +
                                    ": needs at least one full row of " +
                                    std::to_string(kNumClasses) + " scores");
    }
    const std::size_t frames = num_frames();
    for (std::size_t t = 0; t < frames; ++t) {
        double sum = 0.0;
        for (int k = 0; k < kNumClasses; ++k) {
            const double v = score(t, k);
            if (!(v >= 0.0)) {
                throw std::invalid_argument("score track " + model_id + ": frame " +
                                            std::to_string(t) + " class " +
                                            std::to_string(k) + " is negative");
            }
            sum += v;
        }
        if (normalized && std::fabs(sum - 1.0) > 1e-9) {
            throw std::invalid_argument("score track " + model_id + ": frame " +
                                        std::to_string(t) +
                                        " declared normalized but sums to " +
                                        std::to_string(sum));
        }
    }
}

void LabelTrack::validate() const {
    if (rate_hz <= 0.0) {
        throw std::invalid_argument("label track " + video_id + ": rate_hz must be > 0");
    }
    if (labels.empty()) {
        throw std::invalid_argument("label track " + video_id + ": empty");
    }
    for (std::size_t t = 0; t < labels.size(); ++t) {
        const int v = labels[t];
        if (v != kIgnoreLabel && (v < 0 || v >= kNumClasses)) {
            throw std::invalid_argument("label track " + video_id + ": frame " +
                                        std::to_string(t) + " has invalid label " +
                                        std::to_string(v));
        }
    }
}

void FeatureTrack::validate() const {
    if (rate_hz <= 0.0) {
        throw std::invalid_argument("feature track " + video_id + ": rate_hz must be > 0");
    }
    if (dim == 0) {
        throw std::invalid_argument("feature track " + video_id + ": dim must be > 0");
    }
    if (features.empty() || features.size() % dim != 0) {
        throw std::invalid_argument("feature track " + video_id +
                                    ": feature buffer is not a whole number of rows");
    }
}

void AlignedDataset::validate() const {
    labels.validate();
    if (models.empty()) {
        throw std::invalid_argument("aligned dataset: needs at least one model");
    }
    const std::size_t frames = labels.num_frames();
    for (const ScoreTrack& m : models) {
        m.validate();
        if (m.video_id != labels.video_id) {
            throw std::invalid_argument("aligned dataset: model " + m.model_id +
                                        " is for video " + m.video_id + ", labels for " +
                                        labels.video_id);
        }
        if (m.rate_hz != rate_hz || labels.rate_hz != rate_hz) {
            throw std::invalid_argument("aligned dataset: track rates disagree with " +
                                        std::to_string(rate_hz) + " Hz");
        }
        if (m.num_frames() != frames) {
            throw std::invalid_argument("aligned dataset: model " + m.model_id + " has " +
                                        std::to_string(m.num_frames()) + " frames, labels " +
                                        std::to_string(frames));
        }
    }
}

}  // namespace latefuse
