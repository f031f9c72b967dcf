#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "latefuse/kelm.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace latefuse;
using namespace testutil;

namespace {

KernelSpec rbf_spec(double gamma) {
    KernelSpec spec;
    spec.kind = KernelKind::kRbf;
    spec.gamma = gamma;
    return spec;
}

// Training points with pairwise squared distance >= 4 so the RBF gram matrix
// stays diagonally dominant and well conditioned.
std::vector<double> cube_corners() {
    std::vector<double> points;
    for (int i = 0; i < 8; ++i) {
        points.push_back(i & 1 ? 2.0 : 0.0);
        points.push_back(i & 2 ? 2.0 : 0.0);
        points.push_back(i & 4 ? 2.0 : 0.0);
    }
    return points;
}

}  // namespace

TEST_CASE("kernel names") {
    CHECK(parse_kernel_kind("linear") == KernelKind::kLinear);
    CHECK(parse_kernel_kind("poly") == KernelKind::kPolynomial);
    CHECK(parse_kernel_kind("rbf") == KernelKind::kRbf);
    CHECK_THROWS(parse_kernel_kind("sigmoid"));
    CHECK(kernel_kind_name(KernelKind::kPolynomial) == "poly");
}

TEST_CASE("kernel evaluation examples") {
    SUBCASE("rbf of a point with itself is one for any gamma") {
        const double x[] = {1.5, -2.0, 7.25};
        for (const double gamma : {0.01, 0.1, 1.0, 25.0}) {
            CHECK(kernel_eval(x, x, rbf_spec(gamma)) == 1.0);
        }
    }
    SUBCASE("quadratic polynomial on a dot product of ten") {
        KernelSpec spec;
        spec.kind = KernelKind::kPolynomial;
        spec.gamma = 0.1;
        spec.coef0 = 1.0;
        spec.degree = 2;
        const double x[] = {1.0, 3.0};
        const double y[] = {4.0, 2.0};  // x.y = 10, so (0.1*10 + 1)^2 = 4
        CHECK(kernel_eval(x, y, spec) == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("linear kernel is the plain dot product") {
        KernelSpec spec;
        spec.kind = KernelKind::kLinear;
        const double x[] = {1.0, 2.0};
        const double y[] = {3.0, 4.0};
        CHECK(kernel_eval(x, y, spec) == 11.0);
    }
    SUBCASE("dimension mismatch is rejected") {
        const double x[] = {1.0, 2.0};
        const double y[] = {3.0};
        CHECK_THROWS(kernel_eval(x, y, KernelSpec{}));
    }
    SUBCASE("bad kernel parameters are rejected") {
        KernelSpec spec = rbf_spec(0.0);
        CHECK_THROWS(spec.validate());
        spec = rbf_spec(-1.0);
        CHECK_THROWS(spec.validate());
        spec = KernelSpec{};
        spec.degree = 0;
        CHECK_THROWS(spec.validate());
        spec = KernelSpec{};
        spec.gamma = -0.5;
        CHECK_THROWS(spec.validate());
    }
}

TEST_CASE("gram matrices") {
    std::mt19937 gen(43);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    const std::size_t n = 40, dim = 6;
    std::vector<double> points(n * dim);
    for (double& v : points) v = dist(gen);

    SUBCASE("self gram is symmetric") {
        for (const KernelKind kind : {KernelKind::kLinear, KernelKind::kPolynomial,
                                      KernelKind::kRbf}) {
            KernelSpec spec;
            spec.kind = kind;
            const auto gram = kernel_matrix(points, n, points, n, dim, spec);
            REQUIRE(gram.size() == n * n);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    CHECK(std::abs(gram[i * n + j] - gram[j * n + i]) <= 1e-12);
                }
            }
        }
    }
    SUBCASE("rbf entries live in (0, 1] with unit diagonal") {
        const auto gram = kernel_matrix(points, n, points, n, dim, rbf_spec(0.4));
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(gram[i * n + i] == 1.0);
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(gram[i * n + j] > 0.0);
                CHECK(gram[i * n + j] <= 1.0);
            }
        }
    }
    SUBCASE("rectangular blocks agree with entrywise evaluation") {
        const std::size_t m = 7;
        std::vector<double> queries(m * dim);
        for (double& v : queries) v = dist(gen);
        KernelSpec spec;  // polynomial defaults
        const auto block = kernel_matrix(queries, m, points, n, dim, spec);
        REQUIRE(block.size() == m * n);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double direct =
                    kernel_eval(std::span(queries).subspan(i * dim, dim),
                                std::span(points).subspan(j * dim, dim), spec);
                CHECK(block[i * n + j] == direct);
            }
        }
    }
    SUBCASE("size mismatches are rejected") {
        CHECK_THROWS(kernel_matrix(points, n + 1, points, n, dim, KernelSpec{}));
        CHECK_THROWS(kernel_matrix(points, n, points, n, 0, KernelSpec{}));
    }
}

TEST_CASE("feature standardization") {
    SUBCASE("fitted output has zero mean and unit spread") {
        std::mt19937 gen(47);
        std::normal_distribution<double> dist(3.0, 2.5);
        const std::size_t count = 200, dim = 4;
        std::vector<double> features(count * dim);
        for (double& v : features) v = dist(gen);

        const Standardizer std_ = Standardizer::fit(features, dim);
        CHECK(std_.enabled);
        const auto scaled = std_.apply(features, dim);
        REQUIRE(scaled.size() == features.size());
        for (std::size_t d = 0; d < dim; ++d) {
            const auto [mean, sd] = oracle::mean_and_std(scaled, dim, d);
            CHECK(std::abs(mean) < 1e-10);
            CHECK(sd == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    SUBCASE("constant dimensions keep scale one") {
        const double features[] = {5.0, 1.0, 5.0, 2.0, 5.0, 3.0};
        const Standardizer std_ = Standardizer::fit(features, 2);
        CHECK(std_.scale[0] == 1.0);
        const auto scaled = std_.apply(features, 2);
        CHECK(scaled[0] == 0.0);  // (5 - 5) / 1
        CHECK(scaled[2] == 0.0);
        CHECK(scaled[4] == 0.0);
    }
    SUBCASE("a disabled standardizer passes features through") {
        const Standardizer off;
        const double features[] = {1.0, 2.0, 3.0, 4.0};
        const auto out = off.apply(features, 2);
        CHECK(out == std::vector<double>{1.0, 2.0, 3.0, 4.0});
    }
    SUBCASE("dimension mismatch is rejected") {
        std::vector<double> features(12, 1.0);
        const Standardizer std_ = Standardizer::fit(features, 3);
        CHECK_THROWS(std_.apply(features, 4));
    }
}

TEST_CASE("one point ridge solution") {
    // With a single rbf training point the gram matrix is [1], so the system
    // is (1 + 1/3) a = 1 and the coefficient is exactly 3/4.
    const double point[] = {0.5, -1.0};
    const int label[] = {2};
    const KelmModel model = kelm_fit(point, 1, 2, label, rbf_spec(1.0), 3.0);
    REQUIRE(model.coefficients.size() == static_cast<std::size_t>(kNumClasses));
    for (int k = 0; k < kNumClasses; ++k) {
        const double expected = k == 2 ? 0.75 : 0.0;
        CHECK(model.coefficients[k] == doctest::Approx(expected).epsilon(1e-9));
    }
    const auto scores = kelm_predict(model, point, 1);
    REQUIRE(scores.size() == static_cast<std::size_t>(kNumClasses));
    CHECK(scores[2] == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(scores[0] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("ridge coefficients match a dense oracle solve") {
    std::mt19937 gen(53);
    std::uniform_real_distribution<double> dist(-1.5, 1.5);
    std::uniform_int_distribution<int> label_dist(0, kNumClasses - 1);
    std::uniform_int_distribution<std::size_t> n_dist(1, 50);

    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = n_dist(gen);
        const std::size_t dim = 4;
        std::vector<double> features(n * dim);
        for (double& v : features) v = dist(gen);
        std::vector<int> labels(n);
        for (int& v : labels) v = label_dist(gen);

        const KernelSpec spec = rbf_spec(0.3);
        const double c = 3.0;
        const KelmModel model = kelm_fit(features, n, dim, labels, spec, c);

        // Oracle: Gauss-Jordan on (K + I/C) A = T.
        auto system = kernel_matrix(features, n, features, n, dim, spec);
        for (std::size_t i = 0; i < n; ++i) system[i * n + i] += 1.0 / c;
        std::vector<double> targets(n * kNumClasses, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            targets[i * kNumClasses + labels[i]] = 1.0;
        }
        const auto expected = oracle::solve_dense(system, targets, n, kNumClasses);
        REQUIRE(model.coefficients.size() == expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i) {
            CHECK(model.coefficients[i] == doctest::Approx(expected[i]).epsilon(1e-6));
        }
    }
}

TEST_CASE("weak regularization reproduces the targets") {
    const std::vector<double> points = cube_corners();
    const std::vector<int> labels = {0, 1, 2, 3, 4, 5, 6, 0};
    const KelmModel model = kelm_fit(points, 8, 3, labels, rbf_spec(1.0), 1e6);
    const auto scores = kelm_predict(model, points, 8);
    for (std::size_t i = 0; i < 8; ++i) {
        for (int k = 0; k < kNumClasses; ++k) {
            const double target = labels[i] == k ? 1.0 : 0.0;
            CHECK(scores[i * kNumClasses + k] == doctest::Approx(target).epsilon(1e-3));
        }
    }
}

TEST_CASE("training order does not change the predictions") {
    const std::vector<double> points = cube_corners();
    const std::vector<int> labels = {0, 1, 2, 3, 4, 5, 6, 0};
    const KelmModel base = kelm_fit(points, 8, 3, labels, rbf_spec(1.0), 3.0);

    const std::size_t order[] = {5, 2, 7, 0, 3, 6, 1, 4};
    std::vector<double> shuffled_points(points.size());
    std::vector<int> shuffled_labels(labels.size());
    for (std::size_t i = 0; i < 8; ++i) {
        std::copy_n(points.begin() + order[i] * 3, 3, shuffled_points.begin() + i * 3);
        shuffled_labels[i] = labels[order[i]];
    }
    const KelmModel shuffled = kelm_fit(shuffled_points, 8, 3, shuffled_labels,
                                        rbf_spec(1.0), 3.0);

    const double query[] = {0.3, 1.1, 1.9, 1.4, 0.2, 0.6};
    const auto a = kelm_predict(base, query, 2);
    const auto b = kelm_predict(shuffled, query, 2);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-9));
    }
}

TEST_CASE("class weights scale the target rows") {
    const double point[] = {1.0, 0.0};
    const int label[] = {3};
    ClassWeights weights;
    weights.weights.assign(kNumClasses, 1.0);
    weights.weights[3] = 1.6;
    const KelmModel model = kelm_fit(point, 1, 2, label, rbf_spec(1.0), 3.0, &weights);
    // Single point: coefficient = 0.75 * weight of the labeled class.
    CHECK(model.coefficients[3] == doctest::Approx(0.75 * 1.6).epsilon(1e-9));
    for (int k = 0; k < kNumClasses; ++k) {
        if (k != 3) CHECK(model.coefficients[k] == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("model files round-trip bitwise") {
    std::mt19937 gen(59);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    const std::size_t n = 12, dim = 5;
    std::vector<double> features(n * dim);
    for (double& v : features) v = dist(gen);
    std::vector<int> labels(n);
    std::uniform_int_distribution<int> label_dist(0, kNumClasses - 1);
    for (int& v : labels) v = label_dist(gen);

    KernelSpec spec;  // polynomial defaults
    KelmModel model = kelm_fit(features, n, dim, labels, spec, 3.0);
    model.standardizer = Standardizer::fit(features, dim);
    model.feature_rate_hz = 7.5;
    model.window.overlap_fraction = 0.4;

    TempDir dir;
    const std::string path = dir.file("model.json");
    save_model(path, model);
    const KelmModel loaded = load_model(path);

    CHECK(loaded.kernel.kind == model.kernel.kind);
    CHECK(loaded.kernel.gamma == model.kernel.gamma);
    CHECK(loaded.kernel.degree == model.kernel.degree);
    CHECK(loaded.regularization_c == model.regularization_c);
    CHECK(loaded.dim == model.dim);
    CHECK(loaded.training_points == model.training_points);
    CHECK(loaded.coefficients == model.coefficients);
    CHECK(loaded.class_names == model.class_names);
    CHECK(loaded.standardizer.enabled == model.standardizer.enabled);
    CHECK(loaded.standardizer.mean == model.standardizer.mean);
    CHECK(loaded.standardizer.scale == model.standardizer.scale);
    CHECK(loaded.window.length_s == model.window.length_s);
    CHECK(loaded.window.overlap_fraction == model.window.overlap_fraction);
    CHECK(loaded.feature_rate_hz == model.feature_rate_hz);

    std::vector<double> queries(3 * dim);
    for (double& v : queries) v = dist(gen);
    CHECK(kelm_predict(model, queries, 3) == kelm_predict(loaded, queries, 3));
}

TEST_CASE("model file validation") {
    TempDir dir;
    const std::string path = dir.file("model.json");
    SUBCASE("wrong format marker") {
        write_text(path, R"({"format": "something-else", "version": 1})");
        CHECK_THROWS(load_model(path));
    }
    SUBCASE("coefficient shape disagrees with the point count") {
        const double point[] = {1.0};
        const int label[] = {0};
        KelmModel model = kelm_fit(point, 1, 1, label, rbf_spec(1.0), 3.0);
        save_model(path, model);
        auto text = read_text(path);
        const auto pos = text.find("\"num_points\": 1");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 15, "\"num_points\": 2");
        write_text(path, text);
        CHECK_THROWS(load_model(path));
    }
    SUBCASE("missing file") {
        CHECK_THROWS(load_model(dir.file("absent.json")));
    }
}

TEST_CASE("prediction and fitting input errors") {
    const double point[] = {1.0, 2.0};
    const int label[] = {0};
    const KelmModel model = kelm_fit(point, 1, 2, label, rbf_spec(1.0), 3.0);

    CHECK(kelm_predict(model, std::span<const double>{}, 0).empty());
    const double bad_query[] = {1.0, 2.0, 3.0};
    CHECK_THROWS(kelm_predict(model, bad_query, 1));

    CHECK_THROWS(kelm_fit(std::span<const double>{}, 0, 2, std::span<const int>{},
                          rbf_spec(1.0), 3.0));
    const int bad_label[] = {kNumClasses};
    CHECK_THROWS(kelm_fit(point, 1, 2, bad_label, rbf_spec(1.0), 3.0));
    const int ignore_label[] = {kIgnoreLabel};
    CHECK_THROWS(kelm_fit(point, 1, 2, ignore_label, rbf_spec(1.0), 3.0));
    CHECK_THROWS(kelm_fit(point, 1, 2, label, rbf_spec(1.0), 0.0));
    CHECK_THROWS(kelm_fit(point, 1, 2, label, rbf_spec(1.0), -2.0));
    ClassWeights bad_weights;
    bad_weights.weights = {1.0, 1.0};
    CHECK_THROWS(kelm_fit(point, 1, 2, label, rbf_spec(1.0), 3.0, &bad_weights));
}
