#include "latefuse/fusion.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "latefuse/csv_io.hpp"
#include "latefuse/parallel.hpp"

namespace latefuse {

namespace {

constexpr double kSimplexTol = 1e-12;

}  // namespace

FusionMode parse_fusion_mode(const std::string& name) {
    if (name == "swf") {
        return FusionMode::kSwf;
    }
    if (name == "mcwf") {
        return FusionMode::kMcwf;
    }
    throw std::invalid_argument("unknown fusion mode `" + name + "`, expected swf or mcwf");
}

std::string fusion_mode_name(FusionMode mode) {
    return mode == FusionMode::kSwf ? "swf" : "mcwf";
}

void SwfWeights::validate() const {
    if (w.empty()) {
        throw std::invalid_argument("swf weights: empty");
    }
    double sum = 0.0;
    for (std::size_t l = 0; l < w.size(); ++l) {
        if (!(w[l] >= 0.0)) {
            throw std::invalid_argument("swf weights: model " + std::to_string(l) +
                                        " weight is negative");
        }
        sum += w[l];
    }
    if (std::fabs(sum - 1.0) > kSimplexTol) {
        throw std::invalid_argument("swf weights: sum " + std::to_string(sum) + " is not 1");
    }
}

void McwfWeights::validate() const {
    if (num_models == 0 || num_classes == 0) {
        throw std::invalid_argument("mcwf weights: zero dimensions");
    }
    if (w.size() != num_models * num_classes) {
        throw std::invalid_argument("mcwf weights: buffer size mismatch");
    }
    for (std::size_t k = 0; k < num_classes; ++k) {
        double sum = 0.0;
        for (std::size_t l = 0; l < num_models; ++l) {
            if (!(at(l, k) >= 0.0)) {
                throw std::invalid_argument("mcwf weights: entry (" + std::to_string(l) +
                                            ", " + std::to_string(k) + ") is negative");
            }
            sum += at(l, k);
        }
        if (std::fabs(sum - 1.0) > kSimplexTol) {
            throw std::invalid_argument("mcwf weights: class " + std::to_string(k) +
                                        " column sums to " + std::to_string(sum));
        }
    }
}

McwfWeights McwfWeights::constant_columns(const SwfWeights& swf) {
    swf.validate();
    McwfWeights out;
    out.num_models = swf.num_models();
    out.num_classes = kNumClasses;
    out.w.resize(out.num_models * out.num_classes);
    for (std::size_t l = 0; l < out.num_models; ++l) {
        for (std::size_t k = 0; k < out.num_classes; ++k) {
            out.at(l, k) = swf.w[l];
        }
    }
    return out;
}

void SearchConfig::validate() const {
    if (num_draws < 1) {
        throw std::invalid_argument("search config: num_draws must be >= 1");
    }
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("search config: alpha must be > 0");
    }
}

ScoreTrack fuse_swf(const AlignedDataset& dataset, const SwfWeights& weights) {
    weights.validate();
    if (weights.num_models() != dataset.num_models()) {
        throw std::invalid_argument("fuse_swf: " + std::to_string(weights.num_models()) +
                                    " weights for " + std::to_string(dataset.num_models()) +
                                    " models");
    }
    ScoreTrack out;
    out.model_id = "swf-fusion";
    out.video_id = dataset.labels.video_id;
    out.rate_hz = dataset.rate_hz;
    out.normalized = false;
    const std::size_t frames = dataset.num_frames();
    const std::size_t num_models = dataset.num_models();
    out.scores.assign(frames * kNumClasses, 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(frames); ++t) {
        double* dst = out.row(t);
        for (std::size_t l = 0; l < num_models; ++l) {
            const double wl = weights.w[l];
            const double* src = dataset.models[l].row(t);
            for (int k = 0; k < kNumClasses; ++k) {
                dst[k] += wl * src[k];
            }
        }
    }
    return out;
}

ScoreTrack fuse_mcwf(const AlignedDataset& dataset, const McwfWeights& weights) {
    weights.validate();
    if (weights.num_models != dataset.num_models()) {
        throw std::invalid_argument("fuse_mcwf: " + std::to_string(weights.num_models) +
                                    " weight rows for " + std::to_string(dataset.num_models()) +
                                    " models");
    }
    if (weights.num_classes != kNumClasses) {
        throw std::invalid_argument("fuse_mcwf: weights have " +
                                    std::to_string(weights.num_classes) + " classes, need " +
                                    std::to_string(kNumClasses));
    }
    ScoreTrack out;
    out.model_id = "mcwf-fusion";
    out.video_id = dataset.labels.video_id;
    out.rate_hz = dataset.rate_hz;
    out.normalized = false;
    const std::size_t frames = dataset.num_frames();
    const std::size_t num_models = dataset.num_models();
    out.scores.assign(frames * kNumClasses, 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(frames); ++t) {
        double* dst = out.row(t);
        for (std::size_t l = 0; l < num_models; ++l) {
            const double* wl = weights.w.data() + l * kNumClasses;
            const double* src = dataset.models[l].row(t);
            for (int k = 0; k < kNumClasses; ++k) {
                dst[k] += wl[k] * src[k];
            }
        }
    }
    return out;
}

std::vector<int> decode_argmax(const ScoreTrack& track) {
    const std::size_t frames = track.num_frames();
    std::vector<int> out(frames);
    for (std::size_t t = 0; t < frames; ++t) {
        const double* row = track.row(t);
        int best = 0;
        for (int k = 1; k < kNumClasses; ++k) {
            if (row[k] > row[best]) {
                best = k;
            }
        }
        out[t] = best;
    }
    return out;
}

SwfWeights sample_swf(std::size_t num_models, double alpha, rng::Engine& engine) {
    if (num_models == 0) {
        throw std::invalid_argument("sample_swf: needs at least one model");
    }
    SwfWeights out;
    out.w.resize(num_models);
    engine.dirichlet(alpha, out.w);
    return out;
}

McwfWeights sample_mcwf(std::size_t num_models, std::size_t num_classes, double alpha,
                        rng::Engine& engine) {
    if (num_models == 0 || num_classes == 0) {
        throw std::invalid_argument("sample_mcwf: zero dimensions");
    }
    McwfWeights out;
    out.num_models = num_models;
    out.num_classes = num_classes;
    out.w.resize(num_models * num_classes);
    std::vector<double> column(num_models);
    for (std::size_t k = 0; k < num_classes; ++k) {
        engine.dirichlet(alpha, column);
        for (std::size_t l = 0; l < num_models; ++l) {
            out.at(l, k) = column[l];
        }
    }
    return out;
}

namespace {

SwfWeights swf_corner(std::size_t num_models, std::size_t which) {
    SwfWeights out;
    out.w.assign(num_models, 0.0);
    out.w[which] = 1.0;
    return out;
}

SwfWeights swf_uniform(std::size_t num_models) {
    SwfWeights out;
    out.w.assign(num_models, 1.0 / static_cast<double>(num_models));
    return out;
}

}  // namespace

SwfWeights swf_candidate(std::size_t num_models, const SearchConfig& config,
                         std::size_t index) {
    if (config.seed_corners) {
        if (index < num_models) {
            return swf_corner(num_models, index);
        }
        if (index == num_models) {
            return swf_uniform(num_models);
        }
    }
    rng::Engine engine = rng::Engine::substream(config.seed, index);
    return sample_swf(num_models, config.alpha, engine);
}

McwfWeights mcwf_candidate(std::size_t num_models, const SearchConfig& config,
                           std::size_t index) {
    if (config.seed_corners) {
        if (index < num_models) {
            return McwfWeights::constant_columns(swf_corner(num_models, index));
        }
        if (index == num_models) {
            return McwfWeights::constant_columns(swf_uniform(num_models));
        }
    }
    rng::Engine engine = rng::Engine::substream(config.seed, index);
    return sample_mcwf(num_models, kNumClasses, config.alpha, engine);
}

SearchResult optimize_fusion(const AlignedDataset& dataset, FusionMode mode,
                             const SearchConfig& config, int jobs) {
    dataset.validate();
    config.validate();
    bool any_labeled = false;
    for (const int label : dataset.labels.labels) {
        if (label != kIgnoreLabel) {
            any_labeled = true;
            break;
        }
    }
    if (!any_labeled) {
        throw std::invalid_argument("optimize_fusion: labels contain no scored frames");
    }

    const std::size_t num_models = dataset.num_models();
    const std::size_t seeded = config.seed_corners ? num_models + 1 : 0;
    const std::size_t total = seeded + config.num_draws;

    const auto candidate_cpm = [&](std::size_t index) {
        if (mode == FusionMode::kSwf) {
            const ScoreTrack fused = fuse_swf(dataset, swf_candidate(num_models, config, index));
            return evaluate(decode_argmax(fused), dataset.labels).cpm;
        }
        const ScoreTrack fused = fuse_mcwf(dataset, mcwf_candidate(num_models, config, index));
        return evaluate(decode_argmax(fused), dataset.labels).cpm;
    };

    std::vector<double> cpms(total, 0.0);
    const int threads = resolve_jobs(jobs);
    bool failed = false;
    std::string failure;
#pragma omp parallel for schedule(static) num_threads(threads)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(total); ++i) {
        try {
            cpms[i] = candidate_cpm(static_cast<std::size_t>(i));
        } catch (const std::exception& e) {
#pragma omp critical
            {
                failed = true;
                failure = e.what();
            }
        }
    }
    if (failed) {
        throw std::runtime_error("optimize_fusion: candidate evaluation failed: " + failure);
    }

    // Ties go to the lowest candidate index, so corner and uniform seeds win
    // over random draws that merely match them.
    std::size_t best = 0;
    for (std::size_t i = 1; i < total; ++i) {
        if (cpms[i] > cpms[best]) {
            best = i;
        }
    }

    SearchResult result;
    result.mode = mode;
    result.candidate_index = best;
    result.trace = std::move(cpms);
    if (mode == FusionMode::kSwf) {
        result.swf = swf_candidate(num_models, config, best);
        result.best_report =
            evaluate(decode_argmax(fuse_swf(dataset, result.swf)), dataset.labels);
    } else {
        result.mcwf = mcwf_candidate(num_models, config, best);
        result.best_report =
            evaluate(decode_argmax(fuse_mcwf(dataset, result.mcwf)), dataset.labels);
    }
    return result;
}

std::string weights_to_json(const WeightsFile& file) {
    nlohmann::json j;
    j["mode"] = fusion_mode_name(file.mode);
    j["model_ids"] = file.model_ids;
    if (file.mode == FusionMode::kSwf) {
        file.swf.validate();
        j["weights"] = file.swf.w;
    } else {
        file.mcwf.validate();
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t l = 0; l < file.mcwf.num_models; ++l) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t k = 0; k < file.mcwf.num_classes; ++k) {
                row.push_back(file.mcwf.at(l, k));
            }
            rows.push_back(std::move(row));
        }
        j["weights"] = std::move(rows);
    }
    return j.dump(2) + "\n";
}

WeightsFile weights_from_json(const std::string& text, const std::string& origin) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(origin + ": not valid JSON: " + e.what());
    }
    WeightsFile file;
    try {
        file.mode = parse_fusion_mode(j.at("mode").get<std::string>());
        file.model_ids = j.at("model_ids").get<std::vector<std::string>>();
        const nlohmann::json& weights = j.at("weights");
        if (file.mode == FusionMode::kSwf) {
            file.swf.w = weights.get<std::vector<double>>();
        } else {
            file.mcwf.num_models = weights.size();
            file.mcwf.num_classes = kNumClasses;
            for (const auto& row : weights) {
                const auto values = row.get<std::vector<double>>();
                if (values.size() != kNumClasses) {
                    throw std::runtime_error("weight row has " +
                                             std::to_string(values.size()) + " classes");
                }
                file.mcwf.w.insert(file.mcwf.w.end(), values.begin(), values.end());
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(origin + ": bad weights file: " + e.what());
    }
    if (file.mode == FusionMode::kSwf) {
        file.swf.validate();
        if (file.model_ids.size() != file.swf.num_models()) {
            throw std::runtime_error(origin + ": model_ids and weights disagree on L");
        }
    } else {
        file.mcwf.validate();
        if (file.model_ids.size() != file.mcwf.num_models) {
            throw std::runtime_error(origin + ": model_ids and weights disagree on L");
        }
    }
    return file;
}

void save_weights(const std::string& path, const WeightsFile& file) {
    write_file_atomic(path, weights_to_json(file));
}

WeightsFile load_weights(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open weights file: " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return weights_from_json(buffer.str(), path);
}

}  // namespace latefuse
