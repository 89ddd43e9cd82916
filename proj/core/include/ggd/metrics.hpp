#ifndef GGD_METRICS_HPP
#define GGD_METRICS_HPP

#include "ggd/image.hpp"

namespace ggd {

struct MetricReport {
    double re = 0.0;    // relative error, >= 0
    double psnr = 0.0;  // dB; +inf when the images are identical
    double ssim = 0.0;  // in [-1, 1]
};

/// Relative error ||reference - test||_F / ||reference||_F.
double re(const GrayImage& reference, const GrayImage& test);

/// 20*log10(255 / RMSE); +inf when RMSE = 0.
double psnr(const GrayImage& reference, const GrayImage& test);

/// Global (single-window) SSIM: the product of the luminance, contrast and
/// correlation factors with population statistics (divisor N) and
/// c1 = (0.01*255)^2, c2 = (0.03*255)^2, c3 = c2/2.
double ssim(const GrayImage& reference, const GrayImage& test);

MetricReport compare(const GrayImage& reference, const GrayImage& test);

}  // namespace ggd

#endif
