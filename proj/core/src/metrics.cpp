#include "ggd/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ggd {

namespace {

void check_same_shape(const GrayImage& a, const GrayImage& b, const char* who) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument(std::string(who) + ": image dimensions differ");
    }
}

double error_norm(const GrayImage& a, const GrayImage& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = a.pixels[i] - b.pixels[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace

double re(const GrayImage& reference, const GrayImage& test) {
    check_same_shape(reference, test, "re");
    const double ref_norm = frobenius_norm(reference);
    if (ref_norm == 0.0) {
        throw std::invalid_argument("re: reference image has zero norm");
    }
    return error_norm(reference, test) / ref_norm;
}

double psnr(const GrayImage& reference, const GrayImage& test) {
    check_same_shape(reference, test, "psnr");
    const double n = static_cast<double>(reference.size());
    const double rmse = error_norm(reference, test) / std::sqrt(n);
    if (rmse == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 20.0 * std::log10(255.0 / rmse);
}

double ssim(const GrayImage& reference, const GrayImage& test) {
    check_same_shape(reference, test, "ssim");
    const size_t n = reference.size();
    if (n < 2) {
        throw std::invalid_argument("ssim: at least 2 pixels required");
    }

    double mean_a = 0.0, mean_b = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mean_a += reference.pixels[i];
        mean_b += test.pixels[i];
    }
    mean_a /= static_cast<double>(n);
    mean_b /= static_cast<double>(n);

    double var_a = 0.0, var_b = 0.0, cov = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double da = reference.pixels[i] - mean_a;
        const double db = test.pixels[i] - mean_b;
        var_a += da * da;
        var_b += db * db;
        cov += da * db;
    }
    var_a /= static_cast<double>(n);
    var_b /= static_cast<double>(n);
    cov /= static_cast<double>(n);

    const double sd_a = std::sqrt(var_a);
    const double sd_b = std::sqrt(var_b);

    const double c1 = (0.01 * 255.0) * (0.01 * 255.0);
    const double c2 = (0.03 * 255.0) * (0.03 * 255.0);
    const double c3 = c2 / 2.0;

    const double luminance = (2.0 * mean_a * mean_b + c1) / (mean_a * mean_a + mean_b * mean_b + c1);
    const double contrast = (2.0 * sd_a * sd_b + c2) / (var_a + var_b + c2);
    const double structure = (cov + c3) / (sd_a * sd_b + c3);
    return luminance * contrast * structure;
}

MetricReport compare(const GrayImage& reference, const GrayImage& test) {
    return MetricReport{re(reference, test), psnr(reference, test), ssim(reference, test)};
}

}  // namespace ggd
