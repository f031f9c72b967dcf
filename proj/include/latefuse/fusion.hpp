#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "latefuse/metrics.hpp"
#include "latefuse/rng.hpp"
#include "latefuse/types.hpp"

namespace latefuse {

enum class FusionMode { kSwf, kMcwf };

FusionMode parse_fusion_mode(const std::string& name);
std::string fusion_mode_name(FusionMode mode);

/// One weight per model, on the simplex.
struct SwfWeights {
    std::vector<double> w;

    std::size_t num_models() const { return w.size(); }
    void validate() const;
};

/// One weight per model and class; every class column sums to 1 over models.
struct McwfWeights {
    std::size_t num_models = 0;
    std::size_t num_classes = kNumClasses;
    std::vector<double> w;  // num_models x num_classes, row-major

    double at(std::size_t model, std::size_t k) const { return w[model * num_classes + k]; }
    double& at(std::size_t model, std::size_t k) { return w[model * num_classes + k]; }
    void validate() const;

    /// Embeds SWF weights as the constant-column matrix.
    static McwfWeights constant_columns(const SwfWeights& swf);
};

struct SearchConfig {
    std::size_t num_draws = 10000;
    std::uint64_t seed = 0;
    double alpha = 1.0;      // Dirichlet concentration; 1 = uniform on the simplex
    bool seed_corners = true;

    void validate() const;
};

struct SearchResult {
    FusionMode mode = FusionMode::kSwf;
    SwfWeights swf;    // filled in SWF mode
    McwfWeights mcwf;  // filled in MCWF mode
    EvalReport best_report;
    std::size_t candidate_index = 0;
    std::vector<double> trace;  // cpm per candidate index
};

/// fused(t, k) = sum_l w_l * s_l(t, k).
ScoreTrack fuse_swf(const AlignedDataset& dataset, const SwfWeights& weights);

/// fused(t, k) = sum_l W(l, k) * s_l(t, k).
ScoreTrack fuse_mcwf(const AlignedDataset& dataset, const McwfWeights& weights);

/// Per-frame argmax, ties to the smaller class index.
std::vector<int> decode_argmax(const ScoreTrack& track);

SwfWeights sample_swf(std::size_t num_models, double alpha, rng::Engine& engine);
McwfWeights sample_mcwf(std::size_t num_models, std::size_t num_classes, double alpha,
                        rng::Engine& engine);

/// The weights candidate at `index` under `config`: with corner seeding the
/// first L candidates are the one-hot corners, candidate L is uniform, and
/// the rest are Dirichlet draws from substream `index` of the seed.
SwfWeights swf_candidate(std::size_t num_models, const SearchConfig& config,
                         std::size_t index);
McwfWeights mcwf_candidate(std::size_t num_models, const SearchConfig& config,
                           std::size_t index);

/// Random-search weight fitting: every candidate is fused, argmax-decoded and
/// scored; the best cpm wins, ties to the lowest candidate index. Candidates
/// are evaluated in parallel over at most `jobs` workers (0 = all); results
/// are identical for every worker count.
SearchResult optimize_fusion(const AlignedDataset& dataset, FusionMode mode,
                             const SearchConfig& config, int jobs = 0);

/// Fitted weights, serialized as JSON together with the model order they
/// apply to.
struct WeightsFile {
    FusionMode mode = FusionMode::kSwf;
    std::vector<std::string> model_ids;
    SwfWeights swf;
    McwfWeights mcwf;
};

std::string weights_to_json(const WeightsFile& file);
WeightsFile weights_from_json(const std::string& text, const std::string& origin);
void save_weights(const std::string& path, const WeightsFile& file);
WeightsFile load_weights(const std::string& path);

}  // namespace latefuse
