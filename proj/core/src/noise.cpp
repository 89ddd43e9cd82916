#include "ggd/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ggd/rng.hpp"

namespace ggd {

GrayImage contaminate(const GrayImage& image, const NoiseSpec& spec) {
    if (spec.sigma < 0.0 || !std::isfinite(spec.sigma)) {
        throw std::invalid_argument("contaminate: sigma must be finite and >= 0");
    }
    if (spec.sigma == 0.0 && spec.mu == 0.0) {
        return clamp_to_range(image);
    }
    GrayImage out = image;
    RandomStream rng(spec.seed);
    for (double& p : out.pixels) {
        p += spec.mu + spec.sigma * rng.gaussian();
        if (p < 0.0) p = 0.0;
        else if (p > 255.0) p = 255.0;
    }
    return out;
}

double relative_noise(const GrayImage& reference, const GrayImage& noisy) {
    if (!reference.same_shape(noisy)) {
        throw std::invalid_argument("relative_noise: image dimensions differ");
    }
    const double ref_norm = frobenius_norm(reference);
    if (ref_norm == 0.0) {
        throw std::invalid_argument("relative_noise: reference image has zero norm");
    }
    double s = 0.0;
    for (size_t i = 0; i < reference.size(); ++i) {
        const double d = noisy.pixels[i] - reference.pixels[i];
        s += d * d;
    }
    return 100.0 * std::sqrt(s) / ref_norm;
}

NoiseSpec calibrate_sigma(const GrayImage& image, double target_zeta, double tolerance,
                          uint64_t seed) {
    if (!(target_zeta > 0.0 && target_zeta < 100.0)) {
        throw std::invalid_argument("calibrate_sigma: target zeta must be in (0, 100)");
    }
    if (!(tolerance > 0.0)) {
        throw std::invalid_argument("calibrate_sigma: tolerance must be positive");
    }

    const auto zeta_at = [&](double sigma) {
        NoiseSpec s{sigma, 0.0, seed};
        return relative_noise(image, contaminate(image, s));
    };

    double lo = 0.0, hi = 512.0;
    double zeta_lo = 0.0;
    double zeta_hi = zeta_at(hi);
    if (zeta_hi < target_zeta - tolerance) {
        throw std::runtime_error(
            "calibrate_sigma: target zeta " + std::to_string(target_zeta) +
            "% unreachable within sigma bracket [0,512] (clamping saturates zeta at " +
            std::to_string(zeta_hi) + "%)");
    }

    for (int step = 0; step < 60; ++step) {
        const double mid = 0.5 * (lo + hi);
        const double z = zeta_at(mid);
        if (std::abs(z - target_zeta) <= tolerance) {
            return NoiseSpec{mid, 0.0, seed};
        }
        // zeta must stay inside the running bracket; clamping keeps the map
        // monotone non-decreasing in sigma for a fixed seed
        if (z < zeta_lo - 1e-9 || z > zeta_hi + 1e-9) {
            throw std::runtime_error(
                "calibrate_sigma: sigma -> zeta map is not monotone on the bracket");
        }
        if (z < target_zeta) {
            lo = mid;
            zeta_lo = z;
        } else {
            hi = mid;
            zeta_hi = z;
        }
    }
    throw std::runtime_error("calibrate_sigma: did not reach target zeta " +
                             std::to_string(target_zeta) + "% +/- " + std::to_string(tolerance) +
                             "% after 60 bisection steps");
}

}  // namespace ggd
