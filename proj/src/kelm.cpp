#include "latefuse/kelm.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <json.hpp>

#include "latefuse/csv_io.hpp"

namespace latefuse {

namespace {

constexpr double kResidualTol = 1e-8;

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

KernelKind parse_kernel_kind(const std::string& name) {
    if (name == "linear") return KernelKind::kLinear;
    if (name == "poly") return KernelKind::kPolynomial;
    if (name == "rbf") return KernelKind::kRbf;
    throw std::runtime_error("unknown kernel '" + name + "' (expected linear, poly, or rbf)");
}

std::string kernel_kind_name(KernelKind kind) {
    switch (kind) {
        case KernelKind::kLinear: return "linear";
        case KernelKind::kPolynomial: return "poly";
        case KernelKind::kRbf: return "rbf";
    }
    throw std::logic_error("unhandled kernel kind");
}

void KernelSpec::validate() const {
    if (!std::isfinite(gamma) || gamma <= 0.0) {
        throw std::runtime_error("kernel gamma must be positive");
    }
    if (kind == KernelKind::kPolynomial) {
        if (degree < 1) throw std::runtime_error("polynomial degree must be >= 1");
        if (!std::isfinite(coef0)) throw std::runtime_error("polynomial coef0 must be finite");
    }
}

double kernel_eval(std::span<const double> x, std::span<const double> y,
                   const KernelSpec& spec) {
    if (x.size() != y.size()) {
        throw std::runtime_error("kernel arguments have mismatched dimensions");
    }
    switch (spec.kind) {
        case KernelKind::kLinear: {
            double dot = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
            return dot;
        }
        case KernelKind::kPolynomial: {
            double dot = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
            return std::pow(spec.gamma * dot + spec.coef0, spec.degree);
        }
        case KernelKind::kRbf: {
            double dist2 = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double d = x[i] - y[i];
                dist2 += d * d;
            }
            return std::exp(-spec.gamma * dist2);
        }
    }
    throw std::logic_error("unhandled kernel kind");
}

std::vector<double> kernel_matrix(std::span<const double> a, std::size_t rows_a,
                                  std::span<const double> b, std::size_t rows_b,
                                  std::size_t dim, const KernelSpec& spec) {
    spec.validate();
    if (dim == 0) throw std::runtime_error("kernel matrix needs dim > 0");
    if (a.size() != rows_a * dim || b.size() != rows_b * dim) {
        throw std::runtime_error("kernel matrix input size does not match rows*dim");
    }
    std::vector<double> out(rows_a * rows_b, 0.0);
    const std::int64_t n = static_cast<std::int64_t>(rows_a);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const std::span<const double> xi = a.subspan(static_cast<std::size_t>(i) * dim, dim);
        double* row = out.data() + static_cast<std::size_t>(i) * rows_b;
        for (std::size_t j = 0; j < rows_b; ++j) {
            row[j] = kernel_eval(xi, b.subspan(j * dim, dim), spec);
        }
    }
    return out;
}

Standardizer Standardizer::fit(std::span<const double> features, std::size_t dim) {
    if (dim == 0) throw std::runtime_error("standardizer needs dim > 0");
    if (features.empty() || features.size() % dim != 0) {
        throw std::runtime_error("standardizer input size does not match dim");
    }
    const std::size_t count = features.size() / dim;
    Standardizer s;
    s.enabled = true;
    s.mean.assign(dim, 0.0);
    s.scale.assign(dim, 1.0);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t d = 0; d < dim; ++d) s.mean[d] += features[i * dim + d];
    }
    const double inv = 1.0 / static_cast<double>(count);
    for (std::size_t d = 0; d < dim; ++d) s.mean[d] *= inv;
    std::vector<double> var(dim, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t d = 0; d < dim; ++d) {
            const double diff = features[i * dim + d] - s.mean[d];
            var[d] += diff * diff;
        }
    }
    for (std::size_t d = 0; d < dim; ++d) {
        const double sd = std::sqrt(var[d] * inv);
        s.scale[d] = sd > 0.0 ? sd : 1.0;
    }
    return s;
}

std::vector<double> Standardizer::apply(std::span<const double> features,
                                        std::size_t dim) const {
    if (!enabled) return std::vector<double>(features.begin(), features.end());
    if (mean.size() != dim || scale.size() != dim) {
        throw std::runtime_error("standardizer was fitted for a different dim");
    }
    if (features.size() % dim != 0) {
        throw std::runtime_error("standardizer input size does not match dim");
    }
    std::vector<double> out(features.size());
    const std::size_t count = features.size() / dim;
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t d = 0; d < dim; ++d) {
            out[i * dim + d] = (features[i * dim + d] - mean[d]) / scale[d];
        }
    }
    return out;
}

KelmModel kelm_fit(std::span<const double> features, std::size_t count, std::size_t dim,
                   std::span<const int> labels, const KernelSpec& spec,
                   double regularization_c, const ClassWeights* class_weights) {
    spec.validate();
    if (count == 0) throw std::runtime_error("kelm_fit needs at least one training row");
    if (dim == 0) throw std::runtime_error("kelm_fit needs dim > 0");
    if (features.size() != count * dim) {
        throw std::runtime_error("kelm_fit feature size does not match count*dim");
    }
    if (labels.size() != count) {
        throw std::runtime_error("kelm_fit label count does not match feature rows");
    }
    if (!(std::isfinite(regularization_c) && regularization_c > 0.0)) {
        throw std::runtime_error("regularization C must be positive");
    }
    for (std::size_t i = 0; i < count; ++i) {
        if (labels[i] < 0 || labels[i] >= static_cast<int>(kNumClasses)) {
            throw std::runtime_error("kelm_fit label out of range at row " + std::to_string(i));
        }
    }
    if (class_weights != nullptr && class_weights->weights.size() != kNumClasses) {
        throw std::runtime_error("class weights must have one entry per class");
    }

    const Eigen::Index n = static_cast<Eigen::Index>(count);
    const Eigen::Index k = static_cast<Eigen::Index>(kNumClasses);

    const std::vector<double> omega = kernel_matrix(features, count, features, count, dim, spec);
    Eigen::MatrixXd system = Eigen::Map<const RowMatrix>(omega.data(), n, n);
    system.diagonal().array() += 1.0 / regularization_c;

    Eigen::MatrixXd targets = Eigen::MatrixXd::Zero(n, k);
    for (Eigen::Index i = 0; i < n; ++i) {
        const int label = labels[static_cast<std::size_t>(i)];
        const double value =
            class_weights != nullptr ? class_weights->weights[static_cast<std::size_t>(label)] : 1.0;
        targets(i, label) = value;
    }

    const Eigen::LDLT<Eigen::MatrixXd> solver(system);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("kelm_fit factorization failed; kernel system is degenerate");
    }
    const Eigen::MatrixXd coeffs = solver.solve(targets);
    const double residual = (system * coeffs - targets).norm();
    const double target_norm = targets.norm();
    if (!(residual <= kResidualTol * target_norm)) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "kelm_fit solve residual %.3e exceeds %.1e * |T| (|T|=%.3e, rcond=%.3e)",
                      residual, kResidualTol, target_norm, solver.rcond());
        throw std::runtime_error(buf);
    }

    KelmModel model;
    model.kernel = spec;
    model.regularization_c = regularization_c;
    model.dim = dim;
    model.training_points.assign(features.begin(), features.end());
    model.coefficients.resize(count * kNumClasses);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            model.coefficients[static_cast<std::size_t>(i) * kNumClasses +
                               static_cast<std::size_t>(j)] = coeffs(i, j);
        }
    }
    const auto& names = default_class_names();
    model.class_names.assign(names.begin(), names.end());
    return model;
}

std::vector<double> kelm_predict(const KelmModel& model, std::span<const double> features,
                                 std::size_t count) {
    if (count == 0) return {};
    if (model.dim == 0 || model.training_points.empty() || model.coefficients.empty()) {
        throw std::runtime_error("kelm_predict called on an empty model");
    }
    if (features.size() != count * model.dim) {
        throw std::runtime_error("kelm_predict feature size does not match count*dim");
    }
    const std::size_t n = model.num_points();
    if (model.coefficients.size() != n * kNumClasses) {
        throw std::runtime_error("kelm model coefficients have inconsistent shape");
    }
    std::vector<double> scores(count * kNumClasses, 0.0);
    const std::int64_t m = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static)
    for (std::int64_t q = 0; q < m; ++q) {
        const std::span<const double> x =
            features.subspan(static_cast<std::size_t>(q) * model.dim, model.dim);
        double* out = scores.data() + static_cast<std::size_t>(q) * kNumClasses;
        for (std::size_t j = 0; j < n; ++j) {
            const double kv = kernel_eval(
                x,
                std::span<const double>(model.training_points.data() + j * model.dim, model.dim),
                model.kernel);
            const double* coef = model.coefficients.data() + j * kNumClasses;
            for (std::size_t c = 0; c < kNumClasses; ++c) out[c] += kv * coef[c];
        }
    }
    return scores;
}

namespace {

nlohmann::json matrix_to_json(const std::vector<double>& flat, std::size_t rows,
                              std::size_t cols) {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t i = 0; i < rows; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < cols; ++j) row.push_back(flat[i * cols + j]);
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<double> matrix_from_json(const nlohmann::json& value, std::size_t rows,
                                     std::size_t cols, const char* what) {
    if (!value.is_array() || value.size() != rows) {
        throw std::runtime_error(std::string(what) + " has wrong row count");
    }
    std::vector<double> flat;
    flat.reserve(rows * cols);
    for (const auto& row : value) {
        if (!row.is_array() || row.size() != cols) {
            throw std::runtime_error(std::string(what) + " has a row of wrong width");
        }
        for (const auto& v : row) flat.push_back(v.get<double>());
    }
    return flat;
}

}  // namespace

void save_model(const std::string& path, const KelmModel& model) {
    nlohmann::json doc;
    doc["format"] = "latefuse-kelm";
    doc["version"] = 1;
    doc["kernel"] = {{"kind", kernel_kind_name(model.kernel.kind)},
                     {"gamma", model.kernel.gamma},
                     {"degree", model.kernel.degree},
                     {"coef0", model.kernel.coef0}};
    doc["regularization_c"] = model.regularization_c;
    doc["dim"] = model.dim;
    doc["num_points"] = model.num_points();
    doc["class_names"] = model.class_names;
    doc["window"] = {{"length_s", model.window.length_s},
                     {"overlap_fraction", model.window.overlap_fraction}};
    doc["feature_rate_hz"] = model.feature_rate_hz;
    if (model.standardizer.enabled) {
        doc["standardizer"] = {{"enabled", true},
                               {"mean", model.standardizer.mean},
                               {"scale", model.standardizer.scale}};
    } else {
        doc["standardizer"] = {{"enabled", false}};
    }
    doc["training_points"] = matrix_to_json(model.training_points, model.num_points(), model.dim);
    doc["coefficients"] = matrix_to_json(model.coefficients, model.num_points(), kNumClasses);
    write_file_atomic(path, doc.dump(2) + "\n");
}

KelmModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": invalid JSON (" + e.what() + ")");
    }
    if (doc.value("format", "") != "latefuse-kelm") {
        throw std::runtime_error(path + ": not a latefuse-kelm model file");
    }
    KelmModel model;
    const auto& kernel = doc.at("kernel");
    model.kernel.kind = parse_kernel_kind(kernel.at("kind").get<std::string>());
    model.kernel.gamma = kernel.at("gamma").get<double>();
    model.kernel.degree = kernel.at("degree").get<int>();
    model.kernel.coef0 = kernel.at("coef0").get<double>();
    model.kernel.validate();
    model.regularization_c = doc.at("regularization_c").get<double>();
    if (!(model.regularization_c > 0.0)) {
        throw std::runtime_error(path + ": regularization_c must be positive");
    }
    model.dim = doc.at("dim").get<std::size_t>();
    const std::size_t n = doc.at("num_points").get<std::size_t>();
    if (model.dim == 0 || n == 0) {
        throw std::runtime_error(path + ": model must have dim > 0 and num_points > 0");
    }
    model.class_names = doc.at("class_names").get<std::vector<std::string>>();
    if (model.class_names.size() != kNumClasses) {
        throw std::runtime_error(path + ": class_names must list all classes");
    }
    const auto& window = doc.at("window");
    model.window.length_s = window.at("length_s").get<double>();
    model.window.overlap_fraction = window.at("overlap_fraction").get<double>();
    model.window.validate();
    model.feature_rate_hz = doc.at("feature_rate_hz").get<double>();
    const auto& std_json = doc.at("standardizer");
    model.standardizer.enabled = std_json.at("enabled").get<bool>();
    if (model.standardizer.enabled) {
        model.standardizer.mean = std_json.at("mean").get<std::vector<double>>();
        model.standardizer.scale = std_json.at("scale").get<std::vector<double>>();
        if (model.standardizer.mean.size() != model.dim ||
            model.standardizer.scale.size() != model.dim) {
            throw std::runtime_error(path + ": standardizer size does not match dim");
        }
        for (const double s : model.standardizer.scale) {
            if (!(s > 0.0)) throw std::runtime_error(path + ": standardizer scale must be positive");
        }
    }
    model.training_points =
        matrix_from_json(doc.at("training_points"), n, model.dim, "training_points");
    model.coefficients =
        matrix_from_json(doc.at("coefficients"), n, kNumClasses, "coefficients");
    return model;
}

}  // namespace latefuse
