#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "dwsc/util.hpp"

namespace dwsc {

// Deterministic random source. All distributions are implemented here rather
// than with <random> adaptors so that the draw sequence is fixed by this code
// alone (standard-library distributions are implementation defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [0, bound). bound must be > 0. Rejection sampling,
    // so results are unbiased.
    std::uint64_t uniform_index(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform in [0, 1), 53-bit resolution.
    double unit_co() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; the lower boundary is excluded exactly.
    double unit_oc() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    double uniform_real(double lo, double hi) { return lo + (hi - lo) * unit_co(); }

    bool bernoulli(double p) { return unit_co() < p; }

    // Marsaglia polar method. The spare value is discarded so every call maps
    // to a self-contained block of draws.
    double normal(double mean, double stddev) {
        double u, v, s;
        do {
            u = 2.0 * unit_co() - 1.0;
            v = 2.0 * unit_co() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        return mean + stddev * u * std::sqrt(-2.0 * std::log(s) / s);
    }

    // Normal resampled until it lands in (0, 1].
    double truncated_normal_oc(double mean, double stddev) {
        double x;
        do {
            x = normal(mean, stddev);
        } while (x <= 0.0 || x > 1.0);
        return x;
    }

    // In-place Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_index(i));
            std::swap(values[i - 1], values[j]);
        }
    }

    // k distinct indices from [0, n), uniform, order of a partial shuffle.
    std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k) {
        std::vector<std::size_t> pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        std::vector<std::size_t> out;
        out.reserve(k);
        for (std::size_t i = 0; i < k && i < n; ++i) {
            std::size_t j = i + static_cast<std::size_t>(uniform_index(n - i));
            std::swap(pool[i], pool[j]);
            out.push_back(pool[i]);
        }
        return out;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace dwsc
