#ifndef GGD_NOISE_HPP
#define GGD_NOISE_HPP

#include <cstdint>

#include "ggd/image.hpp"

namespace ggd {

/// Parameters of the additive Gaussian contamination.
struct NoiseSpec {
    double sigma = 0.0;   // standard deviation, intensity units
    double mu = 0.0;      // mean; all experiments use 0
    uint64_t seed = 0;
};

/// Adds an i.i.d. Gaussian field (mean mu, std sigma, drawn deterministically
/// from spec.seed in row-major order) and clamps the result to [0,255].
/// sigma = 0 returns the clamped input unchanged; same (inputs, seed) give a
/// bit-identical result.
GrayImage contaminate(const GrayImage& image, const NoiseSpec& spec);

/// Relative percentage noise: 100 * ||noisy - reference||_F / ||reference||_F.
double relative_noise(const GrayImage& reference, const GrayImage& noisy);

/// Bisects sigma over [0, 512] (60 steps max) until the clamped noisy image
/// reaches the target relative noise within tolerance. The per-evaluation
/// seed is fixed, so the objective is deterministic. Throws when the target
/// is unreachable inside the bracket (clamping saturates zeta) or when the
/// empirical sigma -> zeta map is found non-monotone.
NoiseSpec calibrate_sigma(const GrayImage& image, double target_zeta, double tolerance,
                          uint64_t seed);

}  // namespace ggd

#endif
