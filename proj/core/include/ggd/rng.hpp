#ifndef GGD_RNG_HPP
#define GGD_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace ggd {

/// Deterministic random stream used by the noise injector and the
/// randomized backends. std::mt19937_64 has a standardized bit stream;
/// the uniform and Gaussian mappings below avoid std::*_distribution,
/// whose output is implementation-defined, so identical seeds give
/// identical streams on every platform.
class RandomStream {
public:
    explicit RandomStream(uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    /// Uniform integer in [0, bound) by rejection (no modulo bias).
    uint64_t uniform_below(uint64_t bound) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// FNV-1a of a string, used to derive per-run seeds from run coordinates.
inline uint64_t fnv1a_hash(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace ggd

#endif
