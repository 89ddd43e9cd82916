#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ggd/noise.hpp"
#include "ggd/rng.hpp"

using ggd::GrayImage;
using ggd::NoiseSpec;

namespace {

GrayImage constant_image(int rows, int cols, double value) {
    GrayImage img(rows, cols, value);
    return img;
}

GrayImage textured_image(int rows, int cols, uint64_t seed) {
    ggd::RandomStream rng(seed);
    GrayImage img(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            img.at(i, j) = 96.0 + 64.0 * std::sin(0.3 * i) * std::cos(0.2 * j) +
                           40.0 * rng.uniform01();
    return img;
}

}  // namespace

TEST_CASE("contaminate: sigma = 0 is the identity on in-range images") {
    GrayImage img = constant_image(8, 8, 42.0);
    GrayImage noisy = ggd::contaminate(img, NoiseSpec{0.0, 0.0, 9});
    CHECK(noisy.pixels == img.pixels);
}

TEST_CASE("contaminate: fixed seed gives bit-identical output") {
    GrayImage img = textured_image(16, 16, 1);
    NoiseSpec spec{25.0, 0.0, 777};
    GrayImage a = ggd::contaminate(img, spec);
    GrayImage b = ggd::contaminate(img, spec);
    CHECK(a.pixels == b.pixels);
    NoiseSpec other{25.0, 0.0, 778};
    GrayImage c = ggd::contaminate(img, other);
    CHECK(a.pixels != c.pixels);
}

TEST_CASE("contaminate: sample moments of the injected field") {
    // moments measured on the raw generator stream, then the clamped image
    // is checked against an independent redraw from the same seed
    const int n = 128;
    GrayImage img = constant_image(n, n, 128.0);
    NoiseSpec spec{50.0, 0.0, 2024};

    ggd::RandomStream rng(spec.seed);
    double sum = 0.0, sum2 = 0.0;
    const double count = static_cast<double>(n) * n;
    for (int i = 0; i < n * n; ++i) {
        const double z = 50.0 * rng.gaussian();
        sum += z;
        sum2 += z * z;
    }
    const double mean = sum / count;
    const double stddev = std::sqrt(sum2 / count - mean * mean);
    CHECK(std::abs(mean) < 2.0);
    CHECK(std::abs(stddev - 50.0) < 0.05 * 50.0);

    GrayImage noisy = ggd::contaminate(img, spec);
    ggd::RandomStream rng2(spec.seed);
    for (size_t i = 0; i < img.size(); ++i) {
        double expected = 128.0 + 50.0 * rng2.gaussian();
        expected = std::min(255.0, std::max(0.0, expected));
        CHECK(noisy.pixels[i] == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("relative_noise: identical, uniform offset, per-pixel oracle") {
    GrayImage ref = textured_image(12, 12, 3);
    CHECK(ggd::relative_noise(ref, ref) == 0.0);

    GrayImage hundred = constant_image(6, 6, 100.0);
    GrayImage one_fifty = constant_image(6, 6, 150.0);
    CHECK(ggd::relative_noise(hundred, one_fifty) == doctest::Approx(50.0).epsilon(1e-12));

    GrayImage noisy = ggd::contaminate(ref, NoiseSpec{15.0, 0.0, 4});
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < ref.size(); ++i) {
        const double d = noisy.pixels[i] - ref.pixels[i];
        num += d * d;
        den += ref.pixels[i] * ref.pixels[i];
    }
    const double oracle = 100.0 * std::sqrt(num) / std::sqrt(den);
    CHECK(ggd::relative_noise(ref, noisy) == doctest::Approx(oracle).epsilon(1e-12));

    CHECK_THROWS_AS(ggd::relative_noise(ref, hundred), std::invalid_argument);
    GrayImage zero = constant_image(6, 6, 0.0);
    CHECK_THROWS_AS(ggd::relative_noise(zero, one_fifty), std::invalid_argument);
}

TEST_CASE("calibrate_sigma: closed loop hits the target zeta") {
    GrayImage img = textured_image(100, 100, 8);
    NoiseSpec spec = ggd::calibrate_sigma(img, 20.0, 0.5, 31);
    const double achieved = ggd::relative_noise(img, ggd::contaminate(img, spec));
    CHECK(achieved > 19.5);
    CHECK(achieved < 20.5);

    // near-zero target needs near-zero sigma
    NoiseSpec tiny = ggd::calibrate_sigma(img, 0.5, 0.25, 31);
    CHECK(tiny.sigma < 2.0);
}

TEST_CASE("calibrate_sigma: saturation raises the unreachable error") {
    // on a bright image clamping caps zeta well below 100%
    GrayImage img = constant_image(24, 24, 230.0);
    ggd::RandomStream rng(9);
    for (auto& p : img.pixels) p = std::min(255.0, p + 20.0 * rng.uniform01());
    CHECK_THROWS_AS(ggd::calibrate_sigma(img, 99.9, 0.1, 5), std::runtime_error);
    CHECK_THROWS_AS(ggd::calibrate_sigma(img, 120.0, 0.1, 5), std::invalid_argument);
    CHECK_THROWS_AS(ggd::calibrate_sigma(img, 20.0, 0.0, 5), std::invalid_argument);
}

TEST_CASE("zeta is monotone non-decreasing in sigma on the bracket") {
    GrayImage img = textured_image(48, 48, 10);
    double prev = 0.0;
    for (double sigma : {0.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0, 512.0}) {
        const double z = ggd::relative_noise(img, ggd::contaminate(img, NoiseSpec{sigma, 0.0, 6}));
        CHECK(z >= prev - 1e-12);
        prev = z;
    }
}
