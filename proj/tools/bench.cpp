// Times the OpenMP kernels against their serial reference twins and checks
// that both produce bit-identical output.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "latefuse/fusion.hpp"
#include "latefuse/kelm.hpp"
#include "latefuse/reference.hpp"
#include "latefuse/rng.hpp"
#include "latefuse/synth.hpp"
#include "latefuse/windowing.hpp"

namespace {

template <typename F>
double best_of_ms(F&& body, int reps) {
    double best = 0.0;
    for (int i = 0; i < reps; ++i) {
        const auto start = std::chrono::steady_clock::now();
        body();
        const auto stop = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(stop - start).count();
        if (i == 0 || ms < best) best = ms;
    }
    return best;
}

void print_row(const char* name, double serial_ms, double parallel_ms, bool bitwise) {
    std::printf("%-18s %12.2f %12.2f %9.2fx   %s\n", name, serial_ms, parallel_ms,
                parallel_ms > 0.0 ? serial_ms / parallel_ms : 0.0,
                bitwise ? "identical" : "DIFFERS");
}

}  // namespace

int main() {
    constexpr int kReps = 3;

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (no OpenMP)\n");
#endif
    std::printf("%-18s %12s %12s %10s   %s\n", "kernel", "serial_ms", "parallel_ms",
                "speedup", "output");

    // Candidate sweep over a synthetic three-model scenario.
    {
        latefuse::ScenarioConfig scenario;
        scenario.seed = 7;
        scenario.num_frames = 4000;
        scenario.class_priors.assign(latefuse::kNumClasses,
                                     1.0 / latefuse::kNumClasses);
        scenario.reliability = {
            0.9, 0.9, 0.9, 0.9, 0.3, 0.3, 0.3,
            0.3, 0.3, 0.3, 0.3, 0.9, 0.9, 0.9,
            0.6, 0.6, 0.6, 0.6, 0.6, 0.6, 0.6,
        };
        const latefuse::AlignedDataset data = latefuse::generate_scenario(scenario);
        latefuse::SearchConfig config;
        config.num_draws = 100;
        config.seed = 11;

        std::vector<double> serial_cpms;
        std::vector<double> parallel_trace;
        const double serial_ms = best_of_ms(
            [&] {
                serial_cpms =
                    latefuse::ref::sweep_candidates(data, latefuse::FusionMode::kMcwf, config);
            },
            kReps);
        const double parallel_ms = best_of_ms(
            [&] {
                parallel_trace = latefuse::optimize_fusion(data, latefuse::FusionMode::kMcwf,
                                                           config)
                                     .trace;
            },
            kReps);
        const bool bitwise =
            serial_cpms.size() == parallel_trace.size() &&
            std::memcmp(serial_cpms.data(), parallel_trace.data(),
                        serial_cpms.size() * sizeof(double)) == 0;
        print_row("candidate_sweep", serial_ms, parallel_ms, bitwise);
    }

    // Mean||STD pooling of one large window.
    {
        constexpr std::size_t kFrames = 4000;
        constexpr std::size_t kDim = 1024;
        std::vector<double> frames(kFrames * kDim);
        latefuse::rng::Engine engine(21);
        for (double& v : frames) v = engine.normal();

        std::vector<double> serial_out;
        std::vector<double> parallel_out;
        const double serial_ms =
            best_of_ms([&] { serial_out = latefuse::ref::pool_mean_std(frames, kDim); }, kReps);
        const double parallel_ms =
            best_of_ms([&] { parallel_out = latefuse::pool_mean_std(frames, kDim); }, kReps);
        const bool bitwise = serial_out.size() == parallel_out.size() &&
                             std::memcmp(serial_out.data(), parallel_out.data(),
                                         serial_out.size() * sizeof(double)) == 0;
        print_row("pool_mean_std", serial_ms, parallel_ms, bitwise);
    }

    // Full polynomial Gram matrix.
    {
        constexpr std::size_t kRows = 600;
        constexpr std::size_t kDim = 128;
        std::vector<double> points(kRows * kDim);
        latefuse::rng::Engine engine(22);
        for (double& v : points) v = engine.normal();
        latefuse::KernelSpec spec;

        std::vector<double> serial_out;
        std::vector<double> parallel_out;
        const double serial_ms = best_of_ms(
            [&] {
                serial_out =
                    latefuse::ref::kernel_matrix(points, kRows, points, kRows, kDim, spec);
            },
            kReps);
        const double parallel_ms = best_of_ms(
            [&] { parallel_out = latefuse::kernel_matrix(points, kRows, points, kRows, kDim, spec); },
            kReps);
        const bool bitwise = serial_out.size() == parallel_out.size() &&
                             std::memcmp(serial_out.data(), parallel_out.data(),
                                         serial_out.size() * sizeof(double)) == 0;
        print_row("kernel_matrix", serial_ms, parallel_ms, bitwise);
    }

    return 0;
}
