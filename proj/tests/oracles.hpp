// Brute-force reference computations the tests check the library against.
// Everything here is deliberately naive and independent of the library's
// implementation choices.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

namespace oracle {

// Index of the source timestamp m/src nearest to target timestamp n/tgt,
// found by exhaustively comparing scaled distances |n*src - m*tgt| over all
// m. Ties go to the smaller m.
inline std::size_t nearest_index(std::size_t n, double src_rate, double tgt_rate,
                                 std::size_t src_frames) {
    std::size_t best = 0;
    double best_dist = 0.0;
    for (std::size_t m = 0; m < src_frames; ++m) {
        const double dist = std::fabs(static_cast<double>(n) * src_rate -
                                      static_cast<double>(m) * tgt_rate);
        if (m == 0 || dist < best_dist) {
            best = m;
            best_dist = dist;
        }
    }
    return best;
}

struct Metrics {
    double accuracy = 0.0;
    double weighted_f1 = 0.0;
    double cpm = 0.0;
    std::vector<double> per_class_f1;
    std::vector<long long> support;
};

// Per-class precision/recall/F1 computed by rescanning the raw sequences for
// every class. Ignored truth frames (-1) are dropped.
inline Metrics score_predictions(std::span<const int> predictions,
                                 std::span<const int> truth, int num_classes) {
    Metrics out;
    out.per_class_f1.assign(num_classes, 0.0);
    out.support.assign(num_classes, 0);

    long long counted = 0;
    long long correct = 0;
    for (std::size_t t = 0; t < truth.size(); ++t) {
        if (truth[t] < 0) continue;
        ++counted;
        if (predictions[t] == truth[t]) ++correct;
    }
    if (counted == 0) throw std::runtime_error("oracle: nothing to score");
    out.accuracy = static_cast<double>(correct) / static_cast<double>(counted);

    double weighted = 0.0;
    for (int k = 0; k < num_classes; ++k) {
        long long tp = 0, pred_k = 0, truth_k = 0;
        for (std::size_t t = 0; t < truth.size(); ++t) {
            if (truth[t] < 0) continue;
            if (predictions[t] == k) ++pred_k;
            if (truth[t] == k) ++truth_k;
            if (predictions[t] == k && truth[t] == k) ++tp;
        }
        const double precision = pred_k > 0 ? double(tp) / double(pred_k) : 0.0;
        const double recall = truth_k > 0 ? double(tp) / double(truth_k) : 0.0;
        const double f1 =
            precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
        out.per_class_f1[k] = f1;
        out.support[k] = truth_k;
        weighted += double(truth_k) * f1;
    }
    out.weighted_f1 = weighted / static_cast<double>(counted);
    out.cpm = 0.67 * out.weighted_f1 + 0.33 * out.accuracy;
    return out;
}

// Naive two-pass mean and population variance of one dimension.
inline std::pair<double, double> mean_and_std(std::span<const double> block,
                                              std::size_t dim, std::size_t d) {
    const std::size_t count = block.size() / dim;
    double mean = 0.0;
    for (std::size_t s = 0; s < count; ++s) mean += block[s * dim + d];
    mean /= static_cast<double>(count);
    double var = 0.0;
    for (std::size_t s = 0; s < count; ++s) {
        const double diff = block[s * dim + d] - mean;
        var += diff * diff;
    }
    var /= static_cast<double>(count);
    return {mean, std::sqrt(var)};
}

// Window starts enumerated one by one under the documented rule.
inline std::vector<std::pair<double, double>> enumerate_windows(double duration,
                                                                double length, double hop) {
    std::vector<std::pair<double, double>> out;
    for (std::size_t n = 0;; ++n) {
        const double start = static_cast<double>(n) * hop;
        if (start + length > duration + 1e-9) break;
        out.emplace_back(start, start + length);
    }
    if (out.empty()) out.emplace_back(0.0, duration);
    return out;
}

// Most frequent non-negative label via a count map; ties to the smaller key.
inline int count_majority(std::span<const int> labels) {
    std::map<int, std::size_t> counts;
    for (const int v : labels) {
        if (v >= 0) ++counts[v];
    }
    if (counts.empty()) return -1;
    int best = -1;
    std::size_t best_count = 0;
    for (const auto& [label, count] : counts) {
        if (count > best_count) {
            best = label;
            best_count = count;
        }
    }
    return best;
}

// Gauss-Jordan elimination with partial pivoting; solves A X = B for dense
// square A, B with `cols` right-hand sides. Everything is copied.
inline std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b,
                                       std::size_t n, std::size_t cols) {
    if (a.size() != n * n || b.size() != n * cols) {
        throw std::runtime_error("oracle: bad solve shapes");
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::fabs(a[r * n + col]) > std::fabs(a[pivot * n + col])) pivot = r;
        }
        if (std::fabs(a[pivot * n + col]) < 1e-300) {
            throw std::runtime_error("oracle: singular system");
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[col * n + j], a[pivot * n + j]);
            for (std::size_t j = 0; j < cols; ++j) {
                std::swap(b[col * cols + j], b[pivot * cols + j]);
            }
        }
        const double inv = 1.0 / a[col * n + col];
        for (std::size_t j = 0; j < n; ++j) a[col * n + j] *= inv;
        for (std::size_t j = 0; j < cols; ++j) b[col * cols + j] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double factor = a[r * n + col];
            if (factor == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) a[r * n + j] -= factor * a[col * n + j];
            for (std::size_t j = 0; j < cols; ++j) {
                b[r * cols + j] -= factor * b[col * cols + j];
            }
        }
    }
    return b;
}

}  // namespace oracle
