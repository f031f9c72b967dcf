#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

namespace latefuse::rng {

// All sampling below is written against raw 64-bit engine output so results
// do not depend on the standard library's unspecified distribution
// algorithms. Substreams let workers draw independently of schedule: stream i
// of a master seed always produces the same values.

inline std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

class Engine {
public:
    explicit Engine(std::uint64_t seed) : gen_(seed) {}

    static Engine substream(std::uint64_t seed, std::uint64_t stream) {
        return Engine(mix64(seed + (stream + 1) * 0x9E3779B97F4A7C15ull));
    }

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1).
    double uniform_pos() {
        double u;
        do {
            u = uniform();
        } while (u == 0.0);
        return u;
    }

    /// Standard normal via the polar method.
    double normal() {
        for (;;) {
            const double a = 2.0 * uniform() - 1.0;
            const double b = 2.0 * uniform() - 1.0;
            const double s = a * a + b * b;
            if (s > 0.0 && s < 1.0) {
                return a * std::sqrt(-2.0 * std::log(s) / s);
            }
        }
    }

    /// Gamma(alpha, 1) via Marsaglia-Tsang squeeze, with the shape boost for
    /// alpha < 1. alpha == 1 short-circuits to an exponential draw.
    double gamma(double alpha) {
        if (alpha <= 0.0) {
            throw std::invalid_argument("gamma: alpha must be > 0");
        }
        if (alpha == 1.0) {
            return -std::log(uniform_pos());
        }
        if (alpha < 1.0) {
            const double u = uniform_pos();
            return gamma(alpha + 1.0) * std::pow(u, 1.0 / alpha);
        }
        const double d = alpha - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            const double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) {
                continue;
            }
            v = v * v * v;
            const double u = uniform_pos();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) {
                return d * v;
            }
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
                return d * v;
            }
        }
    }

    /// Symmetric Dirichlet(alpha) draw over out.size() components.
    void dirichlet(double alpha, std::span<double> out) {
        if (out.empty()) {
            throw std::invalid_argument("dirichlet: needs at least one component");
        }
        if (out.size() == 1) {
            out[0] = 1.0;
            return;
        }
        double sum = 0.0;
        for (double& v : out) {
            v = gamma(alpha);
            sum += v;
        }
        if (sum <= 0.0) {
            // All gammas underflowed (tiny alpha); fall back to the center.
            for (double& v : out) {
                v = 1.0 / static_cast<double>(out.size());
            }
            return;
        }
        for (double& v : out) {
            v /= sum;
        }
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace latefuse::rng
