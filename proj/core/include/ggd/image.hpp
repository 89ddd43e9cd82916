#ifndef GGD_IMAGE_HPP
#define GGD_IMAGE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ggd {

/// Grayscale image with real-valued pixels, row-major storage.
/// Nominal intensity range is [0,255]; intermediate pipeline stages may
/// carry values outside that range until clamp_to_range is applied.
struct GrayImage {
    int rows = 0;
    int cols = 0;
    std::vector<double> pixels;  // rows*cols, row-major

    GrayImage() = default;
    GrayImage(int r, int c, double fill = 0.0)
        : rows(r), cols(c), pixels(static_cast<size_t>(r) * c, fill) {}

    double& at(int r, int c) { return pixels[static_cast<size_t>(r) * cols + c]; }
    double at(int r, int c) const { return pixels[static_cast<size_t>(r) * cols + c]; }
    size_t size() const { return pixels.size(); }

    bool same_shape(const GrayImage& other) const {
        return rows == other.rows && cols == other.cols;
    }
};

/// Reads a binary (P5) or ASCII (P2) PGM file with maxval <= 255.
/// Header comments (#) are honoured. Throws std::runtime_error with a
/// distinct message for a missing file, a malformed header, maxval > 255,
/// or truncated pixel data.
GrayImage load_pgm(const std::string& path);

/// Writes binary P5 with maxval 255. Pixels are rounded half-away-from-zero
/// and clamped to [0,255] at write time; the image itself is not modified.
void save_pgm(const GrayImage& image, const std::string& path);

/// Pixel-wise mean of three equally sized channels.
GrayImage from_rgb_average(const GrayImage& r, const GrayImage& g, const GrayImage& b);

/// Maps every pixel to min(255, max(0, p)).
GrayImage clamp_to_range(const GrayImage& image);

/// Extracts the centered size x size sub-image. Used by the benchmark
/// harness to build the n = 50..100 timing series.
GrayImage center_crop(const GrayImage& image, int size);

/// Frobenius norm of the pixel matrix.
double frobenius_norm(const GrayImage& image);

/// True when all pixels are finite.
bool all_finite(const GrayImage& image);

}  // namespace ggd

#endif
