// latefuse: pooling, evaluation, score fusion, kernel classifier, and
// synthetic data generation over time-aligned CSV tracks.
//
// Every subcommand prints a single-line JSON summary on stdout; notes and
// errors go to stderr. Outputs are written atomically. All randomness flows
// from --seed, so fixed inputs give bit-identical outputs for any --jobs.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "latefuse/csv_io.hpp"
#include "latefuse/fusion.hpp"
#include "latefuse/kelm.hpp"
#include "latefuse/metrics.hpp"
#include "latefuse/resample.hpp"
#include "latefuse/synth.hpp"
#include "latefuse/types.hpp"
#include "latefuse/windowing.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void print_summary(const json& summary) { std::cout << summary.dump() << "\n"; }

void note(const std::string& message) { std::cerr << "note: " << message << "\n"; }

// Brings labels onto the feature timebase and trims both to a shared length.
void pair_features_labels(latefuse::FeatureTrack& features, latefuse::LabelTrack& labels) {
    if (labels.rate_hz != features.rate_hz) {
        note("resampling labels from " + std::to_string(labels.rate_hz) + " Hz to " +
             std::to_string(features.rate_hz) + " Hz");
        labels = latefuse::resample_track(labels, features.rate_hz);
    }
    const std::size_t frames = std::min(features.num_frames(), labels.num_frames());
    if (frames == 0) {
        throw std::runtime_error("no overlapping frames between features and labels");
    }
    if (frames != features.num_frames() || frames != labels.num_frames()) {
        note("truncating to " + std::to_string(frames) + " shared frames");
    }
    features.features.resize(frames * features.dim);
    labels.labels.resize(frames);
}

latefuse::FusionMode fuse_with_weights(const latefuse::WeightsFile& weights,
                                       const latefuse::AlignedDataset& dataset,
                                       latefuse::ScoreTrack& fused) {
    if (weights.mode == latefuse::FusionMode::kSwf) {
        fused = latefuse::fuse_swf(dataset, weights.swf);
    } else {
        fused = latefuse::fuse_mcwf(dataset, weights.mcwf);
    }
    return weights.mode;
}

// Orders loaded tracks to match the weight file's model list.
std::vector<latefuse::ScoreTrack> order_tracks(std::vector<latefuse::ScoreTrack> tracks,
                                               const std::vector<std::string>& model_ids) {
    std::map<std::string, std::size_t> by_id;
    for (std::size_t i = 0; i < tracks.size(); ++i) {
        if (!by_id.emplace(tracks[i].model_id, i).second) {
            throw std::runtime_error("duplicate model id '" + tracks[i].model_id +
                                     "' among --scores inputs");
        }
    }
    std::vector<latefuse::ScoreTrack> ordered;
    ordered.reserve(model_ids.size());
    for (const std::string& id : model_ids) {
        const auto it = by_id.find(id);
        if (it == by_id.end()) {
            throw std::runtime_error("weights reference model '" + id +
                                     "' but no --scores input carries that id");
        }
        ordered.push_back(std::move(tracks[it->second]));
        by_id.erase(it);
    }
    if (!by_id.empty()) {
        throw std::runtime_error("score track '" + by_id.begin()->first +
                                 "' is not referenced by the weights file");
    }
    return ordered;
}

std::vector<latefuse::ScoreTrack> load_score_tracks(const std::vector<std::string>& paths) {
    std::vector<latefuse::ScoreTrack> tracks;
    tracks.reserve(paths.size());
    for (const std::string& path : paths) {
        tracks.push_back(latefuse::load_score_track(path));
    }
    return tracks;
}

struct SynthArgs {
    std::string config_path;
    std::string out_dir;
};

int run_synth(const SynthArgs& args) {
    const latefuse::ScenarioConfig config = latefuse::load_scenario_config(args.config_path);
    const latefuse::AlignedDataset data = latefuse::generate_scenario(config);
    fs::create_directories(args.out_dir);
    const std::string labels_path = (fs::path(args.out_dir) / "labels.csv").string();
    latefuse::write_label_track(labels_path, data.labels);
    json files = json::array();
    for (const latefuse::ScoreTrack& track : data.models) {
        const std::string path =
            (fs::path(args.out_dir) / ("scores_" + track.model_id + ".csv")).string();
        latefuse::write_score_track(path, track);
        files.push_back(path);
    }
    print_summary({{"command", "synth"},
                   {"video_id", config.video_id},
                   {"num_frames", data.num_frames()},
                   {"num_models", data.num_models()},
                   {"labels", labels_path},
                   {"scores", files}});
    return 0;
}

struct PoolArgs {
    std::string features_path;
    std::string labels_path;
    std::string out_path;
    latefuse::WindowSpec window;
};

int run_pool(const PoolArgs& args) {
    latefuse::FeatureTrack features = latefuse::load_feature_track(args.features_path);
    latefuse::LabelTrack labels = latefuse::load_label_track(args.labels_path);
    pair_features_labels(features, labels);
    const std::vector<latefuse::PooledSegment> segments =
        latefuse::pool_track(features, labels, args.window);
    latefuse::write_pooled_segments(args.out_path, segments, features.video_id,
                                    features.rate_hz, features.dim);
    print_summary({{"command", "pool"},
                   {"segments", segments.size()},
                   {"dim", features.dim},
                   {"pooled_dim", 2 * features.dim},
                   {"out", args.out_path}});
    return 0;
}

struct EvaluateArgs {
    std::string pred_path;
    std::string truth_path;
    std::string report_path;
    std::string label_map_path;
};

int run_evaluate(const EvaluateArgs& args) {
    latefuse::LabelTrack truth = latefuse::load_label_track(args.truth_path);
    std::vector<int> predictions;
    if (latefuse::is_label_file(args.pred_path)) {
        latefuse::LabelTrack pred = latefuse::load_label_track(args.pred_path);
        if (pred.rate_hz != truth.rate_hz) {
            note("resampling predictions to " + std::to_string(truth.rate_hz) + " Hz");
            pred = latefuse::resample_track(pred, truth.rate_hz);
        }
        predictions = pred.labels;
        for (std::size_t t = 0; t < predictions.size(); ++t) {
            if (predictions[t] == latefuse::kIgnoreLabel) {
                throw std::runtime_error("prediction file has an ignore label at frame " +
                                         std::to_string(t));
            }
        }
    } else {
        latefuse::ScoreTrack pred = latefuse::load_score_track(args.pred_path);
        if (pred.rate_hz != truth.rate_hz) {
            note("resampling predictions to " + std::to_string(truth.rate_hz) + " Hz");
            pred = latefuse::resample_track(pred, truth.rate_hz);
        }
        predictions = latefuse::decode_argmax(pred);
    }
    const std::size_t frames = std::min(predictions.size(), truth.num_frames());
    if (frames != predictions.size() || frames != truth.num_frames()) {
        note("truncating to " + std::to_string(frames) + " shared frames");
        predictions.resize(frames);
        truth.labels.resize(frames);
    }
    const latefuse::EvalReport report = latefuse::evaluate(predictions, truth);
    if (!args.report_path.empty()) {
        latefuse::write_report(args.report_path, report);
    }
    json summary{{"command", "evaluate"},
                 {"frames", report.total},
                 {"accuracy", report.accuracy},
                 {"weighted_f1", report.weighted_f1},
                 {"cpm", report.cpm}};
    if (!args.label_map_path.empty()) {
        const latefuse::ClassMap map = latefuse::ClassMap::load(args.label_map_path);
        summary["class_names"] = map.names();
    }
    if (!args.report_path.empty()) {
        summary["report"] = args.report_path;
    }
    print_summary(summary);
    return 0;
}

struct FuseOptimizeArgs {
    std::string labels_path;
    std::vector<std::string> score_paths;
    std::string mode = "swf";
    std::string weights_out;
    std::string trace_path;
    std::string report_path;
    double rate_hz = 5.0;
    latefuse::SearchConfig config;
    int jobs = 0;
};

int run_fuse_optimize(const FuseOptimizeArgs& args) {
    const latefuse::FusionMode mode = latefuse::parse_fusion_mode(args.mode);
    const latefuse::LabelTrack labels = latefuse::load_label_track(args.labels_path);
    std::vector<latefuse::ScoreTrack> tracks = load_score_tracks(args.score_paths);
    {
        std::map<std::string, int> seen;
        for (const auto& track : tracks) {
            if (++seen[track.model_id] > 1) {
                throw std::runtime_error("duplicate model id '" + track.model_id +
                                         "' among --scores inputs");
            }
        }
    }
    const latefuse::AlignedDataset dataset =
        latefuse::align(labels, std::move(tracks), args.rate_hz);
    const latefuse::SearchResult result =
        latefuse::optimize_fusion(dataset, mode, args.config, args.jobs);

    latefuse::WeightsFile weights;
    weights.mode = mode;
    for (const latefuse::ScoreTrack& track : dataset.models) {
        weights.model_ids.push_back(track.model_id);
    }
    weights.swf = result.swf;
    weights.mcwf = result.mcwf;
    latefuse::save_weights(args.weights_out, weights);

    if (!args.trace_path.empty()) {
        std::string trace = "candidate_index,cpm\n";
        char line[64];
        for (std::size_t i = 0; i < result.trace.size(); ++i) {
            std::snprintf(line, sizeof(line), "%zu,%.9f\n", i, result.trace[i]);
            trace += line;
        }
        latefuse::write_file_atomic(args.trace_path, trace);
    }
    if (!args.report_path.empty()) {
        latefuse::write_report(args.report_path, result.best_report);
    }

    json summary{{"command", "fuse-optimize"},
                 {"mode", latefuse::fusion_mode_name(mode)},
                 {"num_models", dataset.num_models()},
                 {"frames", dataset.num_frames()},
                 {"num_candidates", result.trace.size()},
                 {"best_index", result.candidate_index},
                 {"cpm", result.best_report.cpm},
                 {"weights", args.weights_out}};
    if (!args.trace_path.empty()) summary["trace"] = args.trace_path;
    if (!args.report_path.empty()) summary["report"] = args.report_path;
    print_summary(summary);
    return 0;
}

struct FuseApplyArgs {
    std::vector<std::string> score_paths;
    std::string weights_path;
    std::string labels_path;
    std::string out_path;
    std::string report_path;
    double rate_hz = 5.0;
};

int run_fuse_apply(const FuseApplyArgs& args) {
    const latefuse::WeightsFile weights = latefuse::load_weights(args.weights_path);
    std::vector<latefuse::ScoreTrack> tracks =
        order_tracks(load_score_tracks(args.score_paths), weights.model_ids);

    latefuse::AlignedDataset dataset;
    bool labeled = !args.labels_path.empty();
    if (labeled) {
        dataset = latefuse::align(latefuse::load_label_track(args.labels_path),
                                  std::move(tracks), args.rate_hz);
    } else {
        latefuse::LabelTrack placeholder;
        placeholder.video_id = tracks.front().video_id;
        placeholder.rate_hz = args.rate_hz;
        std::size_t frames = SIZE_MAX;
        for (const latefuse::ScoreTrack& track : tracks) {
            frames = std::min(frames, latefuse::resampled_length(track.num_frames(),
                                                                 track.rate_hz, args.rate_hz));
        }
        placeholder.labels.assign(frames, latefuse::kIgnoreLabel);
        dataset = latefuse::align(placeholder, std::move(tracks), args.rate_hz);
    }

    latefuse::ScoreTrack fused;
    const latefuse::FusionMode mode = fuse_with_weights(weights, dataset, fused);
    latefuse::write_score_track(args.out_path, fused);

    json summary{{"command", "fuse-apply"},
                 {"mode", latefuse::fusion_mode_name(mode)},
                 {"frames", fused.num_frames()},
                 {"out", args.out_path}};
    if (labeled) {
        const latefuse::EvalReport report =
            latefuse::evaluate(latefuse::decode_argmax(fused), dataset.labels);
        if (!args.report_path.empty()) {
            latefuse::write_report(args.report_path, report);
            summary["report"] = args.report_path;
        }
        summary["cpm"] = report.cpm;
    } else if (!args.report_path.empty()) {
        throw std::runtime_error("--report needs --labels");
    }
    print_summary(summary);
    return 0;
}

struct KelmTrainArgs {
    std::string features_path;
    std::string labels_path;
    std::string model_out;
    latefuse::WindowSpec window;
    std::string kernel = "poly";
    double gamma = 0.1;
    int degree = 3;
    double coef0 = 1.0;
    double regularization_c = 3.0;
    bool standardize = false;
    bool class_weights = false;
    double class_weight_r = 0.47;
};

int run_kelm_train(const KelmTrainArgs& args) {
    latefuse::FeatureTrack features = latefuse::load_feature_track(args.features_path);
    latefuse::LabelTrack labels = latefuse::load_label_track(args.labels_path);
    pair_features_labels(features, labels);

    const std::vector<latefuse::PooledSegment> segments =
        latefuse::pool_track(features, labels, args.window);
    const std::size_t dim = 2 * features.dim;
    std::vector<double> matrix;
    std::vector<int> targets;
    for (const latefuse::PooledSegment& segment : segments) {
        if (segment.label == latefuse::kIgnoreLabel) continue;
        matrix.insert(matrix.end(), segment.pooled.begin(), segment.pooled.end());
        targets.push_back(segment.label);
    }
    if (targets.empty()) {
        throw std::runtime_error("no labeled segments to train on");
    }
    note(std::to_string(targets.size()) + " labeled segments of dim " + std::to_string(dim));

    latefuse::KernelSpec spec;
    spec.kind = latefuse::parse_kernel_kind(args.kernel);
    spec.gamma = args.gamma;
    spec.degree = args.degree;
    spec.coef0 = args.coef0;

    latefuse::Standardizer standardizer;
    if (args.standardize) {
        standardizer = latefuse::Standardizer::fit(matrix, dim);
        matrix = standardizer.apply(matrix, dim);
    }

    latefuse::ClassWeights weights;
    if (args.class_weights) {
        // Weight formula only involves the total and each class's own count,
        // so absent classes can be skipped and given a placeholder.
        std::array<std::int64_t, latefuse::kNumClasses> counts{};
        for (const int label : targets) ++counts[label];
        std::vector<std::int64_t> present;
        std::vector<std::size_t> where;
        for (std::size_t k = 0; k < counts.size(); ++k) {
            if (counts[k] > 0) {
                present.push_back(counts[k]);
                where.push_back(k);
            }
        }
        const latefuse::ClassWeights packed =
            latefuse::log_class_weights(present, args.class_weight_r);
        weights.r = packed.r;
        weights.weights.assign(latefuse::kNumClasses, 1.0);
        for (std::size_t i = 0; i < where.size(); ++i) {
            weights.weights[where[i]] = packed.weights[i];
        }
    }

    latefuse::KelmModel model = latefuse::kelm_fit(
        matrix, targets.size(), dim, targets, spec, args.regularization_c,
        args.class_weights ? &weights : nullptr);
    model.standardizer = standardizer;
    model.window = args.window;
    model.feature_rate_hz = features.rate_hz;
    latefuse::save_model(args.model_out, model);

    json summary{{"command", "kelm-train"},
                 {"segments", targets.size()},
                 {"dim", dim},
                 {"kernel", args.kernel},
                 {"model", args.model_out}};
    if (args.class_weights) summary["class_weights"] = weights.weights;
    print_summary(summary);
    return 0;
}

struct KelmPredictArgs {
    std::string features_path;
    std::string model_path;
    std::string out_path;
    std::string model_id = "kelm";
    double rate_hz = 5.0;
};

int run_kelm_predict(const KelmPredictArgs& args) {
    const latefuse::KelmModel model = latefuse::load_model(args.model_path);
    const latefuse::FeatureTrack features = latefuse::load_feature_track(args.features_path);
    features.validate();
    if (2 * features.dim != model.dim) {
        throw std::runtime_error("model expects pooled dim " + std::to_string(model.dim) +
                                 " but features pool to " + std::to_string(2 * features.dim));
    }

    const double duration =
        static_cast<double>(features.num_frames()) / features.rate_hz;
    const std::vector<latefuse::TimeWindow> windows =
        latefuse::segment_windows(duration, model.window);

    std::vector<latefuse::WindowPrediction> predictions;
    std::vector<double> pooled;
    for (const latefuse::TimeWindow& window : windows) {
        const auto [first, last] = latefuse::frames_in_window(
            window.start_s, window.end_s, features.rate_hz, features.num_frames());
        if (first >= last) continue;
        const std::span<const double> block(features.features.data() + first * features.dim,
                                            (last - first) * features.dim);
        std::vector<double> row = latefuse::pool_mean_std(block, features.dim);
        row = model.standardizer.apply(row, model.dim);
        pooled.insert(pooled.end(), row.begin(), row.end());
        predictions.push_back({window.start_s, window.end_s, {}});
    }
    if (predictions.empty()) {
        throw std::runtime_error("no window covers any feature frame");
    }

    const std::vector<double> scores =
        latefuse::kelm_predict(model, pooled, predictions.size());
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const double* row = scores.data() + i * latefuse::kNumClasses;
        // Raw kernel scores may be negative; shifting a row by its minimum
        // keeps the argmax and satisfies the non-negative track invariant.
        double lowest = row[0];
        for (int k = 1; k < latefuse::kNumClasses; ++k) lowest = std::min(lowest, row[k]);
        const double shift = lowest < 0.0 ? -lowest : 0.0;
        for (int k = 0; k < latefuse::kNumClasses; ++k) {
            predictions[i].scores[k] = row[k] + shift;
        }
    }

    const std::size_t frames = latefuse::resampled_length(features.num_frames(),
                                                          features.rate_hz, args.rate_hz);
    latefuse::ScoreTrack track =
        latefuse::expand_window_predictions(predictions, args.rate_hz, frames);
    track.model_id = args.model_id;
    track.video_id = features.video_id;
    latefuse::write_score_track(args.out_path, track);

    print_summary({{"command", "kelm-predict"},
                   {"windows", predictions.size()},
                   {"frames", frames},
                   {"out", args.out_path}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"late-fusion toolkit for frame-level emotion classification"};
    app.require_subcommand(1);

    SynthArgs synth;
    CLI::App* synth_cmd = app.add_subcommand("synth", "generate a synthetic labeled dataset");
    synth_cmd->add_option("--config", synth.config_path, "scenario config JSON")
        ->required()->check(CLI::ExistingFile);
    synth_cmd->add_option("--out-dir", synth.out_dir, "output directory")->required();

    PoolArgs pool;
    CLI::App* pool_cmd =
        app.add_subcommand("pool", "pool frame features into window mean||STD segments");
    pool_cmd->add_option("--features", pool.features_path, "feature track CSV")
        ->required()->check(CLI::ExistingFile);
    pool_cmd->add_option("--labels", pool.labels_path, "label track CSV")
        ->required()->check(CLI::ExistingFile);
    pool_cmd->add_option("--out", pool.out_path, "pooled segments CSV")->required();
    pool_cmd->add_option("--length-s", pool.window.length_s, "window length in seconds");
    pool_cmd->add_option("--overlap-fraction", pool.window.overlap_fraction,
                         "fraction of window shared with the next one");

    EvaluateArgs evaluate;
    CLI::App* evaluate_cmd =
        app.add_subcommand("evaluate", "score predictions against truth labels");
    evaluate_cmd->add_option("--pred", evaluate.pred_path, "label or score track CSV")
        ->required()->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--truth", evaluate.truth_path, "truth label CSV")
        ->required()->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--report", evaluate.report_path, "write full report JSON here");
    evaluate_cmd->add_option("--label-map", evaluate.label_map_path,
                             "class index,name CSV echoed into the summary")
        ->check(CLI::ExistingFile);

    FuseOptimizeArgs optimize;
    CLI::App* optimize_cmd =
        app.add_subcommand("fuse-optimize", "search fusion weights maximizing cpm");
    optimize_cmd->add_option("--labels", optimize.labels_path, "truth label CSV")
        ->required()->check(CLI::ExistingFile);
    optimize_cmd->add_option("--scores", optimize.score_paths, "model score CSVs")
        ->required()->check(CLI::ExistingFile);
    optimize_cmd->add_option("--mode", optimize.mode, "swf or mcwf")
        ->check(CLI::IsMember({"swf", "mcwf"}));
    optimize_cmd->add_option("--weights-out", optimize.weights_out, "weights JSON path")
        ->required();
    optimize_cmd->add_option("--trace", optimize.trace_path, "per-candidate cpm CSV");
    optimize_cmd->add_option("--report", optimize.report_path, "best candidate report JSON");
    optimize_cmd->add_option("--rate-hz", optimize.rate_hz, "common timebase for alignment");
    optimize_cmd->add_option("--num-draws", optimize.config.num_draws,
                             "random candidates to evaluate");
    optimize_cmd->add_option("--seed", optimize.config.seed, "RNG seed");
    optimize_cmd->add_option("--alpha", optimize.config.alpha, "Dirichlet concentration");
    optimize_cmd->add_flag("--seed-corners,!--no-seed-corners", optimize.config.seed_corners,
                           "also try each model alone plus the uniform weighting");
    optimize_cmd->add_option("--jobs", optimize.jobs, "worker threads (0 = all)");

    FuseApplyArgs apply;
    CLI::App* apply_cmd = app.add_subcommand("fuse-apply", "fuse tracks with saved weights");
    apply_cmd->add_option("--scores", apply.score_paths, "model score CSVs")
        ->required()->check(CLI::ExistingFile);
    apply_cmd->add_option("--weights", apply.weights_path, "weights JSON from fuse-optimize")
        ->required()->check(CLI::ExistingFile);
    apply_cmd->add_option("--labels", apply.labels_path, "optional truth labels for scoring")
        ->check(CLI::ExistingFile);
    apply_cmd->add_option("--out", apply.out_path, "fused score CSV")->required();
    apply_cmd->add_option("--report", apply.report_path, "report JSON (needs --labels)");
    apply_cmd->add_option("--rate-hz", apply.rate_hz, "common timebase for alignment");

    KelmTrainArgs train;
    CLI::App* train_cmd =
        app.add_subcommand("kelm-train", "fit the kernel classifier on pooled windows");
    train_cmd->add_option("--features", train.features_path, "feature track CSV")
        ->required()->check(CLI::ExistingFile);
    train_cmd->add_option("--labels", train.labels_path, "label track CSV")
        ->required()->check(CLI::ExistingFile);
    train_cmd->add_option("--model-out", train.model_out, "model JSON path")->required();
    train_cmd->add_option("--length-s", train.window.length_s, "window length in seconds");
    train_cmd->add_option("--overlap-fraction", train.window.overlap_fraction,
                          "fraction of window shared with the next one");
    train_cmd->add_option("--kernel", train.kernel, "linear, poly, or rbf")
        ->check(CLI::IsMember({"linear", "poly", "rbf"}));
    train_cmd->add_option("--gamma", train.gamma, "kernel gamma");
    train_cmd->add_option("--degree", train.degree, "polynomial degree");
    train_cmd->add_option("--coef0", train.coef0, "polynomial constant term");
    train_cmd->add_option("--c", train.regularization_c, "regularization C");
    train_cmd->add_flag("--standardize", train.standardize,
                        "z-scale pooled features before fitting");
    train_cmd->add_flag("--class-weights", train.class_weights,
                        "scale targets by log class weights");
    train_cmd->add_option("--class-weight-r", train.class_weight_r,
                          "r constant of the log weight formula");

    KelmPredictArgs predict;
    CLI::App* predict_cmd =
        app.add_subcommand("kelm-predict", "emit a frame-level score track from a model");
    predict_cmd->add_option("--features", predict.features_path, "feature track CSV")
        ->required()->check(CLI::ExistingFile);
    predict_cmd->add_option("--model", predict.model_path, "model JSON from kelm-train")
        ->required()->check(CLI::ExistingFile);
    predict_cmd->add_option("--out", predict.out_path, "score track CSV")->required();
    predict_cmd->add_option("--model-id", predict.model_id, "model id written to the track");
    predict_cmd->add_option("--rate-hz", predict.rate_hz, "output frame rate");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*synth_cmd) return run_synth(synth);
        if (*pool_cmd) return run_pool(pool);
        if (*evaluate_cmd) return run_evaluate(evaluate);
        if (*optimize_cmd) return run_fuse_optimize(optimize);
        if (*apply_cmd) return run_fuse_apply(apply);
        if (*train_cmd) return run_kelm_train(train);
        if (*predict_cmd) return run_kelm_predict(predict);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no command selected\n";
    return 1;
}
