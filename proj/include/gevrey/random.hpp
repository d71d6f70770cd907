#pragma once

#include "gevrey/spectral_grid.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace gevrey {

/// Counter-based generator: the n-th draw is splitmix64(key + n·γ), so a
/// stream is fully determined by its key and independent of scheduling.
/// Distributions are computed here rather than through <random> so the
/// sequence is identical across standard libraries.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t hash(std::string_view text) {
        std::uint64_t h = 0xCBF29CE484222325ULL;
        for (unsigned char c : text) {
            h ^= c;
            h *= 0x100000001B3ULL;
        }
        return h;
    }

    /// Stream key for case `index` of `suite` under a run seed.
    static std::uint64_t stream_key(std::uint64_t seed, std::string_view suite, std::uint64_t index) {
        return mix(mix(seed ^ hash(suite)) + index);
    }

    std::uint64_t next() { return mix(key_ + 0x9E3779B97F4A7C15ULL * counter_++); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    /// Log-uniform on [a, b], a > 0.
    double log_uniform(double a, double b) {
        return std::exp(uniform(std::log(a), std::log(b)));
    }
    /// Integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    /// Standard normal by Box–Muller.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    /// Uniform direction on the unit sphere of R^d.
    FrequencyPoint direction(int d) {
        for (;;) {
            FrequencyPoint p = FrequencyPoint::zero(d);
            for (int a = 0; a < d; ++a) p[a] = normal();
            const double n = p.norm();
            if (n > 1e-12) return (1.0 / n) * p;
        }
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace gevrey
