#include "latefuse/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "latefuse/metrics.hpp"

namespace latefuse::ref {

ScoreTrack fuse_swf(const AlignedDataset& dataset, const SwfWeights& weights) {
    weights.validate();
    if (weights.num_models() != dataset.num_models()) {
        throw std::invalid_argument("ref::fuse_swf: weight count does not match model count");
    }
    ScoreTrack out;
    out.model_id = "swf-fusion";
    out.video_id = dataset.labels.video_id;
    out.rate_hz = dataset.rate_hz;
    out.normalized = false;
    const std::size_t frames = dataset.num_frames();
    const std::size_t num_models = dataset.num_models();
    out.scores.assign(frames * kNumClasses, 0.0);
    for (std::size_t t = 0; t < frames; ++t) {
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
        throw std::invalid_argument("ref::fuse_mcwf: weight rows do not match model count");
    }
    if (weights.num_classes != static_cast<std::size_t>(kNumClasses)) {
        throw std::invalid_argument("ref::fuse_mcwf: weights have the wrong class count");
    }
    ScoreTrack out;
    out.model_id = "mcwf-fusion";
    out.video_id = dataset.labels.video_id;
    out.rate_hz = dataset.rate_hz;
    out.normalized = false;
    const std::size_t frames = dataset.num_frames();
    const std::size_t num_models = dataset.num_models();
    out.scores.assign(frames * kNumClasses, 0.0);
    for (std::size_t t = 0; t < frames; ++t) {
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

std::vector<double> pool_mean_std(std::span<const double> frames, std::size_t dim) {
    if (dim == 0) throw std::invalid_argument("ref::pool_mean_std: dim must be > 0");
    if (frames.empty() || frames.size() % dim != 0) {
        throw std::invalid_argument("ref::pool_mean_std: frame buffer size mismatch");
    }
    const std::size_t count = frames.size() / dim;
    const double inv = 1.0 / static_cast<double>(count);
    std::vector<double> out(2 * dim, 0.0);
    for (std::size_t d = 0; d < dim; ++d) {
        double sum = 0.0;
        double lo = frames[d];
        double hi = frames[d];
        for (std::size_t t = 0; t < count; ++t) {
            const double v = frames[t * dim + d];
            sum += v;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (lo == hi) {
            out[d] = lo;
            out[dim + d] = 0.0;
            continue;
        }
        const double mean = sum * inv;
        double var = 0.0;
        for (std::size_t t = 0; t < count; ++t) {
            const double diff = frames[t * dim + d] - mean;
            var += diff * diff;
        }
        out[d] = mean;
        out[dim + d] = std::sqrt(var * inv);
    }
    return out;
}

std::vector<double> kernel_matrix(std::span<const double> a, std::size_t rows_a,
                                  std::span<const double> b, std::size_t rows_b,
                                  std::size_t dim, const KernelSpec& spec) {
    spec.validate();
    if (dim == 0) throw std::runtime_error("ref::kernel_matrix needs dim > 0");
    if (a.size() != rows_a * dim || b.size() != rows_b * dim) {
        throw std::runtime_error("ref::kernel_matrix input size does not match rows*dim");
    }
    std::vector<double> out(rows_a * rows_b, 0.0);
    for (std::size_t i = 0; i < rows_a; ++i) {
        const std::span<const double> xi = a.subspan(i * dim, dim);
        double* row = out.data() + i * rows_b;
        for (std::size_t j = 0; j < rows_b; ++j) {
            row[j] = kernel_eval(xi, b.subspan(j * dim, dim), spec);
        }
    }
    return out;
}

std::vector<double> sweep_candidates(const AlignedDataset& data, FusionMode mode,
                                     const SearchConfig& config) {
    data.validate();
    config.validate();
    const std::size_t num_models = data.num_models();
    const std::size_t seeded = config.seed_corners ? num_models + 1 : 0;
    const std::size_t total = seeded + config.num_draws;
    std::vector<double> cpms(total, 0.0);
    for (std::size_t i = 0; i < total; ++i) {
        if (mode == FusionMode::kSwf) {
            const ScoreTrack fused = ref::fuse_swf(data, swf_candidate(num_models, config, i));
            cpms[i] = evaluate(decode_argmax(fused), data.labels).cpm;
        } else {
            const ScoreTrack fused = ref::fuse_mcwf(data, mcwf_candidate(num_models, config, i));
            cpms[i] = evaluate(decode_argmax(fused), data.labels).cpm;
        }
    }
    return cpms;
}

}  // namespace latefuse::ref
