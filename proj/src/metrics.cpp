#include "latefuse/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "latefuse/csv_io.hpp"

namespace latefuse {

EvalReport evaluate(std::span<const int> predictions, const LabelTrack& truth) {
    truth.validate();
    if (predictions.size() != truth.num_frames()) {
        throw std::invalid_argument("evaluate: " + std::to_string(predictions.size()) +
                                    " predictions vs " + std::to_string(truth.num_frames()) +
                                    " truth frames");
    }

    EvalReport report;
    for (std::size_t t = 0; t < predictions.size(); ++t) {
        const int label = truth.labels[t];
        if (label == kIgnoreLabel) {
            continue;
        }
        const int pred = predictions[t];
        if (pred < 0 || pred >= kNumClasses) {
            throw std::invalid_argument("evaluate: frame " + std::to_string(t) +
                                        " has invalid prediction " + std::to_string(pred));
        }
        ++report.confusion[label * kNumClasses + pred];
        ++report.support[label];
        ++report.total;
    }
    if (report.total == 0) {
        throw std::invalid_argument("evaluate: no frames left after ignore filtering");
    }

    std::int64_t correct = 0;
    for (int k = 0; k < kNumClasses; ++k) {
        correct += report.confusion[k * kNumClasses + k];
    }
    report.accuracy = static_cast<double>(correct) / static_cast<double>(report.total);

    double f1_sum = 0.0;
    for (int k = 0; k < kNumClasses; ++k) {
        const std::int64_t tp = report.confusion[k * kNumClasses + k];
        std::int64_t predicted = 0;
        for (int j = 0; j < kNumClasses; ++j) {
            predicted += report.confusion[j * kNumClasses + k];
        }
        const std::int64_t actual = report.support[k];
        const double precision =
            predicted > 0 ? static_cast<double>(tp) / static_cast<double>(predicted) : 0.0;
        const double recall =
            actual > 0 ? static_cast<double>(tp) / static_cast<double>(actual) : 0.0;
        const double denom = precision + recall;
        report.per_class_f1[k] = denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
        f1_sum += static_cast<double>(actual) * report.per_class_f1[k];
    }
    report.weighted_f1 = f1_sum / static_cast<double>(report.total);
    report.cpm = kCpmF1Weight * report.weighted_f1 + kCpmAccuracyWeight * report.accuracy;
    return report;
}

ClassWeights log_class_weights(std::span<const std::int64_t> counts, double r) {
    if (r <= 0.0) {
        throw std::invalid_argument("log_class_weights: r must be > 0");
    }
    if (counts.empty()) {
        throw std::invalid_argument("log_class_weights: empty counts");
    }
    std::int64_t total = 0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] <= 0) {
            throw std::invalid_argument("log_class_weights: class " + std::to_string(k) +
                                        " has zero count; merge or drop empty classes");
        }
        total += counts[k];
    }
    ClassWeights out;
    out.r = r;
    out.weights.reserve(counts.size());
    for (const std::int64_t count : counts) {
        const double w =
            std::log(r * static_cast<double>(total) / static_cast<double>(count));
        out.weights.push_back(std::max(1.0, w));
    }
    return out;
}

namespace {

double round6(double v) { return std::round(v * 1e6) / 1e6; }

}  // namespace

std::string report_to_json(const EvalReport& report) {
    nlohmann::json j;
    auto& confusion = j["confusion"] = nlohmann::json::array();
    for (int row = 0; row < kNumClasses; ++row) {
        nlohmann::json line = nlohmann::json::array();
        for (int col = 0; col < kNumClasses; ++col) {
            line.push_back(report.confusion[row * kNumClasses + col]);
        }
        confusion.push_back(std::move(line));
    }
    j["support"] = report.support;
    nlohmann::json f1 = nlohmann::json::array();
    for (const double v : report.per_class_f1) {
        f1.push_back(round6(v));
    }
    j["per_class_f1"] = std::move(f1);
    j["accuracy"] = round6(report.accuracy);
    j["weighted_f1"] = round6(report.weighted_f1);
    j["cpm"] = round6(report.cpm);
    return j.dump(2) + "\n";
}

void write_report(const std::string& path, const EvalReport& report) {
    write_file_atomic(path, report_to_json(report));
}

}  // namespace latefuse
