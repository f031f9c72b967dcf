#include "latefuse/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "latefuse/csv_io.hpp"
#include "latefuse/rng.hpp"

namespace latefuse {

void ScenarioConfig::validate() const {
    if (num_frames == 0) throw std::runtime_error("scenario num_frames must be positive");
    if (!(std::isfinite(rate_hz) && rate_hz > 0.0)) {
        throw std::runtime_error("scenario rate_hz must be positive");
    }
    if (video_id.empty()) throw std::runtime_error("scenario video_id must be non-empty");
    if (class_priors.size() != kNumClasses) {
        throw std::runtime_error("scenario class_priors must have one entry per class");
    }
    double total = 0.0;
    for (const double p : class_priors) {
        if (!(std::isfinite(p) && p >= 0.0)) {
            throw std::runtime_error("scenario class_priors must be non-negative");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::runtime_error("scenario class_priors must sum to 1 within 1e-12");
    }
    if (reliability.empty() || reliability.size() % kNumClasses != 0) {
        throw std::runtime_error("scenario reliability must be num_models x num_classes");
    }
    for (const double r : reliability) {
        if (!(std::isfinite(r) && r >= 0.0 && r <= 1.0)) {
            throw std::runtime_error("scenario reliability entries must lie in [0, 1]");
        }
    }
    if (!(confidence_sharpness > 0.5 && confidence_sharpness <= 1.0)) {
        throw std::runtime_error(
            "scenario confidence_sharpness must lie in (0.5, 1] so the intended argmax wins");
    }
    if (!model_ids.empty()) {
        if (model_ids.size() != num_models()) {
            throw std::runtime_error("scenario model_ids must match the reliability row count");
        }
        std::set<std::string> seen;
        for (const auto& id : model_ids) {
            if (id.empty()) throw std::runtime_error("scenario model_ids must be non-empty");
            if (!seen.insert(id).second) {
                throw std::runtime_error("scenario model_ids must be unique");
            }
        }
    }
}

ScenarioConfig load_scenario_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario config " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": invalid JSON (" + e.what() + ")");
    }
    ScenarioConfig config;
    config.seed = doc.at("seed").get<std::uint64_t>();
    config.num_frames = doc.at("num_frames").get<std::size_t>();
    config.rate_hz = doc.value("rate_hz", 5.0);
    config.video_id = doc.value("video_id", std::string("synth"));
    config.class_priors = doc.at("class_priors").get<std::vector<double>>();
    const auto& rel = doc.at("reliability");
    if (!rel.is_array()) throw std::runtime_error(path + ": reliability must be an array of rows");
    for (const auto& row : rel) {
        const auto values = row.get<std::vector<double>>();
        if (values.size() != kNumClasses) {
            throw std::runtime_error(path + ": each reliability row needs one entry per class");
        }
        config.reliability.insert(config.reliability.end(), values.begin(), values.end());
    }
    config.confidence_sharpness = doc.value("confidence_sharpness", 0.75);
    if (doc.contains("model_ids")) {
        config.model_ids = doc.at("model_ids").get<std::vector<std::string>>();
    }
    config.validate();
    return config;
}

void save_scenario_config(const std::string& path, const ScenarioConfig& config) {
    config.validate();
    nlohmann::json doc;
    doc["seed"] = config.seed;
    doc["num_frames"] = config.num_frames;
    doc["rate_hz"] = config.rate_hz;
    doc["video_id"] = config.video_id;
    doc["class_priors"] = config.class_priors;
    nlohmann::json rel = nlohmann::json::array();
    for (std::size_t l = 0; l < config.num_models(); ++l) {
        rel.push_back(std::vector<double>(
            config.reliability.begin() + static_cast<std::ptrdiff_t>(l * kNumClasses),
            config.reliability.begin() + static_cast<std::ptrdiff_t>((l + 1) * kNumClasses)));
    }
    doc["reliability"] = std::move(rel);
    doc["confidence_sharpness"] = config.confidence_sharpness;
    if (!config.model_ids.empty()) doc["model_ids"] = config.model_ids;
    write_file_atomic(path, doc.dump(2) + "\n");
}

namespace {

// Round to 9 decimals, matching the CSV writer's precision.
double quantize9(double v) { return std::round(v * 1e9) / 1e9; }

int sample_class(rng::Engine& engine, const std::vector<double>& priors) {
    const double u = engine.uniform();
    double cum = 0.0;
    for (std::size_t k = 0; k < priors.size(); ++k) {
        cum += priors[k];
        if (u < cum) return static_cast<int>(k);
    }
    // Guard against cum landing a hair below 1: pick the last nonzero prior.
    for (std::size_t k = priors.size(); k-- > 0;) {
        if (priors[k] > 0.0) return static_cast<int>(k);
    }
    return static_cast<int>(priors.size()) - 1;
}

}  // namespace

AlignedDataset generate_scenario(const ScenarioConfig& config) {
    config.validate();
    const std::size_t num_models = config.num_models();
    const std::size_t frames = config.num_frames;

    AlignedDataset data;
    data.rate_hz = config.rate_hz;
    data.labels.video_id = config.video_id;
    data.labels.rate_hz = config.rate_hz;
    data.labels.labels.assign(frames, 0);
    data.models.resize(num_models);
    for (std::size_t l = 0; l < num_models; ++l) {
        ScoreTrack& track = data.models[l];
        track.model_id = config.model_ids.empty() ? "model_" + std::to_string(l + 1)
                                                  : config.model_ids[l];
        track.video_id = config.video_id;
        track.rate_hz = config.rate_hz;
        track.normalized = true;
        track.scores.assign(frames * kNumClasses, 0.0);
    }

    const double sharpness = config.confidence_sharpness;
    for (std::size_t t = 0; t < frames; ++t) {
        rng::Engine engine = rng::Engine::substream(config.seed, static_cast<std::uint64_t>(t));
        const int truth = sample_class(engine, config.class_priors);
        data.labels.labels[t] = truth;
        for (std::size_t l = 0; l < num_models; ++l) {
            const double p_correct =
                config.reliability[l * kNumClasses + static_cast<std::size_t>(truth)];
            const double u_correct = engine.uniform();
            // Drawn unconditionally to keep the stream layout fixed.
            std::size_t wrong = std::min<std::size_t>(
                kNumClasses - 2,
                static_cast<std::size_t>(engine.uniform() * double(kNumClasses - 1)));
            if (wrong >= static_cast<std::size_t>(truth)) ++wrong;
            double noise[kNumClasses - 1];
            double noise_total = 0.0;
            for (std::size_t j = 0; j + 1 < kNumClasses; ++j) {
                noise[j] = -std::log(engine.uniform_pos());
                noise_total += noise[j];
            }
            const std::size_t target =
                u_correct < p_correct ? static_cast<std::size_t>(truth) : wrong;
            double* row = data.models[l].scores.data() + t * kNumClasses;
            double off_sum = 0.0;
            std::size_t j = 0;
            for (std::size_t k = 0; k < kNumClasses; ++k) {
                if (k == target) continue;
                row[k] = quantize9((1.0 - sharpness) * noise[j] / noise_total);
                off_sum += row[k];
                ++j;
            }
            row[target] = 1.0 - off_sum;
        }
    }

    data.validate();
    return data;
}

}  // namespace latefuse
