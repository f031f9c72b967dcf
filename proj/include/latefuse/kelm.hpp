#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "latefuse/metrics.hpp"
#include "latefuse/types.hpp"
#include "latefuse/windowing.hpp"

namespace latefuse {

enum class KernelKind { kLinear, kPolynomial, kRbf };

KernelKind parse_kernel_kind(const std::string& name);
std::string kernel_kind_name(KernelKind kind);

struct KernelSpec {
    KernelKind kind = KernelKind::kPolynomial;
    double gamma = 0.1;
    int degree = 3;    // polynomial only
    double coef0 = 1.0;  // polynomial only

    void validate() const;
};

/// linear: x.y   polynomial: (gamma*x.y + coef0)^degree   rbf: exp(-gamma*|x-y|^2)
double kernel_eval(std::span<const double> x, std::span<const double> y,
                   const KernelSpec& spec);

/// Gram block K(a_i, b_j) as a rows_a x rows_b row-major matrix.
std::vector<double> kernel_matrix(std::span<const double> a, std::size_t rows_a,
                                  std::span<const double> b, std::size_t rows_b,
                                  std::size_t dim, const KernelSpec& spec);

/// Optional per-dimension z-scaling fitted on training features. Dimensions
/// with zero spread keep scale 1.
struct Standardizer {
    bool enabled = false;
    std::vector<double> mean;
    std::vector<double> scale;

    static Standardizer fit(std::span<const double> features, std::size_t dim);
    std::vector<double> apply(std::span<const double> features, std::size_t dim) const;
};

/// Kernel ridge classifier: coefficients solve (K + I/C) A = T for one-hot
/// targets T; prediction scores are K(query, train) * A.
struct KelmModel {
    KernelSpec kernel;
    double regularization_c = 3.0;
    std::size_t dim = 0;
    std::vector<double> training_points;  // n x dim
    std::vector<double> coefficients;     // n x kNumClasses
    std::vector<std::string> class_names;
    Standardizer standardizer;
    WindowSpec window;            // pooling grid the training segments came from
    double feature_rate_hz = 0.0;

    std::size_t num_points() const { return dim == 0 ? 0 : training_points.size() / dim; }
};

/// Fits on `count` feature rows with per-row class labels (no ignore marker).
/// Optional class weights scale each target row by the weight of its label.
KelmModel kelm_fit(std::span<const double> features, std::size_t count, std::size_t dim,
                   std::span<const int> labels, const KernelSpec& spec,
                   double regularization_c, const ClassWeights* class_weights = nullptr);

/// Raw count x kNumClasses scores; not probabilities and possibly negative.
/// Decode with per-row argmax.
std::vector<double> kelm_predict(const KelmModel& model, std::span<const double> features,
                                 std::size_t count);

void save_model(const std::string& path, const KelmModel& model);
KelmModel load_model(const std::string& path);

}  // namespace latefuse
