#include <doctest.h>

#include <random>

#include "latefuse/windowing.hpp"
#include "oracles.hpp"

using namespace latefuse;

TEST_CASE("window spec validation and hop") {
    WindowSpec spec;
    CHECK(spec.length_s == 4.0);
    CHECK(spec.overlap_fraction == 0.0);
    CHECK_NOTHROW(spec.validate());

    spec.overlap_fraction = 0.4;
    CHECK(spec.hop_s() == doctest::Approx(2.4).epsilon(1e-12));

    spec.length_s = 0.0;
    CHECK_THROWS(spec.validate());
    spec.length_s = 4.0;
    spec.overlap_fraction = 1.0;
    CHECK_THROWS(spec.validate());
    spec.overlap_fraction = -0.1;
    CHECK_THROWS(spec.validate());
}

TEST_CASE("window grid over a twelve second clip with two fifths overlap") {
    WindowSpec spec;
    spec.overlap_fraction = 0.4;
    const auto windows = segment_windows(12.0, spec);
    REQUIRE(windows.size() == 4);
    const double starts[] = {0.0, 2.4, 4.8, 7.2};
    for (std::size_t i = 0; i < windows.size(); ++i) {
        CHECK(windows[i].start_s == doctest::Approx(starts[i]).epsilon(1e-12));
        CHECK(windows[i].end_s == doctest::Approx(starts[i] + 4.0).epsilon(1e-12));
    }
    // Consecutive windows share two fifths of their length.
    for (std::size_t i = 0; i + 1 < windows.size(); ++i) {
        const double shared = windows[i].end_s - windows[i + 1].start_s;
        CHECK(shared == doctest::Approx(0.4 * 4.0).epsilon(1e-12));
    }
}

TEST_CASE("window grid edge cases") {
    WindowSpec spec;
    SUBCASE("exact fit gives one window") {
        const auto windows = segment_windows(4.0, spec);
        REQUIRE(windows.size() == 1);
        CHECK(windows[0].start_s == 0.0);
        CHECK(windows[0].end_s == 4.0);
    }
    SUBCASE("short clip keeps a single short window") {
        const auto windows = segment_windows(3.0, spec);
        REQUIRE(windows.size() == 1);
        CHECK(windows[0].end_s == 3.0);
    }
    SUBCASE("trailing partial window is dropped") {
        const auto windows = segment_windows(10.0, spec);
        REQUIRE(windows.size() == 2);
        CHECK(windows[1].end_s == 8.0);
    }
    SUBCASE("non-positive duration is rejected") {
        CHECK_THROWS(segment_windows(0.0, spec));
        CHECK_THROWS(segment_windows(-1.0, spec));
    }
}

TEST_CASE("window grids match enumeration and the closed-form count") {
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> dur_dist(0.5, 90.0);
    std::uniform_real_distribution<double> len_dist(0.5, 10.0);
    std::uniform_real_distribution<double> ov_dist(0.0, 0.9);
    for (int trial = 0; trial < 400; ++trial) {
        WindowSpec spec;
        spec.length_s = len_dist(gen);
        spec.overlap_fraction = ov_dist(gen);
        const double duration = dur_dist(gen);
        const auto got = segment_windows(duration, spec);
        const auto expected = oracle::enumerate_windows(duration, spec.length_s, spec.hop_s());
        REQUIRE(got.size() == expected.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].start_s == expected[i].first);
            CHECK(got[i].end_s == expected[i].second);
        }
        if (duration >= spec.length_s) {
            const std::size_t closed_form = static_cast<std::size_t>(
                std::floor((duration - spec.length_s) / spec.hop_s() + 1e-9)) + 1;
            CHECK(got.size() == closed_form);
        }
    }
}

TEST_CASE("four second windows cover thirty frames at 7.5 hertz and twenty at 5") {
    const auto [first_75, last_75] = frames_in_window(0.0, 4.0, 7.5, 1000);
    CHECK(first_75 == 0);
    CHECK(last_75 == 30);

    const auto [first_5, last_5] = frames_in_window(0.0, 4.0, 5.0, 1000);
    CHECK(first_5 == 0);
    CHECK(last_5 == 20);

    // Second window of a two-fifths overlap grid at 5 Hz: [2.4, 6.4).
    const auto [first, last] = frames_in_window(2.4, 6.4, 5.0, 1000);
    CHECK(first == 12);
    CHECK(last == 32);

    // Clamped by the track length.
    const auto [cf, cl] = frames_in_window(2.4, 6.4, 5.0, 20);
    CHECK(cf == 12);
    CHECK(cl == 20);
}

TEST_CASE("mean and std pooling") {
    SUBCASE("hand-computed two frame example") {
        const double frames[] = {0.0, 2.0, 2.0, 0.0};  // rows (0,2) and (2,0)
        const auto pooled = pool_mean_std(frames, 2);
        REQUIRE(pooled.size() == 4);
        CHECK(pooled[0] == 1.0);
        CHECK(pooled[1] == 1.0);
        CHECK(pooled[2] == 1.0);
        CHECK(pooled[3] == 1.0);
    }
    SUBCASE("identical rows pool to zero spread exactly") {
        std::vector<double> frames;
        for (int s = 0; s < 9; ++s) {
            frames.insert(frames.end(), {1.5, -2.25, 0.125});
        }
        const auto pooled = pool_mean_std(frames, 3);
        CHECK(pooled[0] == 1.5);
        CHECK(pooled[1] == -2.25);
        CHECK(pooled[2] == 0.125);
        CHECK(pooled[3] == 0.0);
        CHECK(pooled[4] == 0.0);
        CHECK(pooled[5] == 0.0);
    }
    SUBCASE("single frame has zero spread") {
        const double frames[] = {3.0, 4.0};
        const auto pooled = pool_mean_std(frames, 2);
        CHECK(pooled[2] == 0.0);
        CHECK(pooled[3] == 0.0);
    }
    SUBCASE("a 1024-dim embedding pools to 2048 values") {
        std::vector<double> frames(30 * 1024, 0.25);
        CHECK(pool_mean_std(frames, 1024).size() == 2048);
    }
    SUBCASE("matches the naive oracle on random blocks") {
        std::mt19937 gen(17);
        std::uniform_real_distribution<double> dist(-10.0, 10.0);
        std::uniform_int_distribution<std::size_t> count_dist(1, 40);
        std::uniform_int_distribution<std::size_t> dim_dist(1, 24);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t count = count_dist(gen);
            const std::size_t dim = dim_dist(gen);
            std::vector<double> frames(count * dim);
            for (double& v : frames) v = dist(gen);
            const auto pooled = pool_mean_std(frames, dim);
            REQUIRE(pooled.size() == 2 * dim);
            for (std::size_t d = 0; d < dim; ++d) {
                const auto [mean, sd] = oracle::mean_and_std(frames, dim, d);
                CHECK(pooled[d] == doctest::Approx(mean).epsilon(1e-12));
                CHECK(pooled[dim + d] == doctest::Approx(sd).epsilon(1e-12));
            }
        }
    }
    SUBCASE("spread never exceeds the value range") {
        std::mt19937 gen(19);
        std::uniform_real_distribution<double> dist(-5.0, 5.0);
        std::vector<double> frames(25 * 4);
        for (double& v : frames) v = dist(gen);
        const auto pooled = pool_mean_std(frames, 4);
        for (std::size_t d = 0; d < 4; ++d) {
            double lo = frames[d], hi = frames[d];
            for (std::size_t s = 1; s < 25; ++s) {
                lo = std::min(lo, frames[s * 4 + d]);
                hi = std::max(hi, frames[s * 4 + d]);
            }
            CHECK(pooled[4 + d] >= 0.0);
            CHECK(pooled[4 + d] <= hi - lo + 1e-12);
        }
    }
    SUBCASE("order of frames does not matter") {
        std::vector<double> frames = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
        const auto a = pool_mean_std(frames, 2);
        std::vector<double> shuffled = {5.0, 6.0, 1.0, 2.0, 3.0, 4.0};
        const auto b = pool_mean_std(shuffled, 2);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
        }
    }
    SUBCASE("empty and ragged inputs are rejected") {
        CHECK_THROWS(pool_mean_std({}, 3));
        const double frames[] = {1.0, 2.0, 3.0, 4.0, 5.0};
        CHECK_THROWS(pool_mean_std(frames, 3));
        CHECK_THROWS(pool_mean_std(frames, 0));
    }
}

TEST_CASE("majority labels") {
    CHECK(majority_label(std::vector<int>{1, 1, 2}) == 1);
    CHECK(majority_label(std::vector<int>{1, 2}) == 1);
    CHECK(majority_label(std::vector<int>{kIgnoreLabel, 4, kIgnoreLabel, 4, 0}) == 4);
    CHECK(majority_label(std::vector<int>{kIgnoreLabel, kIgnoreLabel}) == kIgnoreLabel);
    CHECK(majority_label(std::vector<int>{6}) == 6);
    CHECK_THROWS(majority_label(std::vector<int>{}));
    CHECK_THROWS(majority_label(std::vector<int>{9}));

    std::mt19937 gen(23);
    std::uniform_int_distribution<int> label_dist(-1, kNumClasses - 1);
    std::uniform_int_distribution<std::size_t> len_dist(1, 50);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> labels(len_dist(gen));
        for (int& v : labels) v = label_dist(gen);
        CHECK(majority_label(labels) == oracle::count_majority(labels));
    }
}

TEST_CASE("pooling a track") {
    FeatureTrack features;
    features.video_id = "v";
    features.rate_hz = 7.5;
    features.dim = 2;
    LabelTrack labels;
    labels.video_id = "v";
    labels.rate_hz = 7.5;

    SUBCASE("thirty frames at 7.5 hertz form exactly one four second segment") {
        features.features.assign(30 * 2, 0.5);
        labels.labels.assign(30, 3);
        const auto segments = pool_track(features, labels, WindowSpec{});
        REQUIRE(segments.size() == 1);
        CHECK(segments[0].start_s == 0.0);
        CHECK(segments[0].end_s == 4.0);
        CHECK(segments[0].label == 3);
        REQUIRE(segments[0].pooled.size() == 4);
        CHECK(segments[0].pooled[0] == 0.5);
        CHECK(segments[0].pooled[2] == 0.0);  // constant input, zero spread
    }
    SUBCASE("labels are the window mode") {
        features.rate_hz = 5.0;
        labels.rate_hz = 5.0;
        features.features.assign(40 * 2, 1.0);
        labels.labels.assign(40, 0);
        for (int i = 0; i < 11; ++i) labels.labels[20 + i] = 5;  // majority of window 2
        const auto segments = pool_track(features, labels, WindowSpec{});
        REQUIRE(segments.size() == 2);
        CHECK(segments[0].label == 0);
        CHECK(segments[1].label == 5);
    }
    SUBCASE("all-ignore window keeps the ignore label") {
        features.rate_hz = 5.0;
        labels.rate_hz = 5.0;
        features.features.assign(20 * 2, 1.0);
        labels.labels.assign(20, kIgnoreLabel);
        const auto segments = pool_track(features, labels, WindowSpec{});
        REQUIRE(segments.size() == 1);
        CHECK(segments[0].label == kIgnoreLabel);
    }
    SUBCASE("rate and length mismatches are rejected") {
        features.features.assign(30 * 2, 0.5);
        labels.labels.assign(30, 3);
        labels.rate_hz = 5.0;
        CHECK_THROWS(pool_track(features, labels, WindowSpec{}));
        labels.rate_hz = 7.5;
        labels.labels.pop_back();
        CHECK_THROWS(pool_track(features, labels, WindowSpec{}));
    }
    SUBCASE("overlapping grid yields the enumerated segment count") {
        features.rate_hz = 5.0;
        labels.rate_hz = 5.0;
        features.features.assign(60 * 2, 1.0);
        labels.labels.assign(60, 2);
        WindowSpec spec;
        spec.overlap_fraction = 0.4;
        const auto segments = pool_track(features, labels, spec);
        const auto windows = oracle::enumerate_windows(12.0, 4.0, spec.hop_s());
        CHECK(segments.size() == windows.size());
    }
}
