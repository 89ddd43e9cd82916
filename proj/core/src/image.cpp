#include "ggd/image.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ggd {

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
bool next_header_token(std::istream& in, std::string& tok) {
    tok.clear();
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (!std::isspace(c)) break;
    }
    if (c == EOF) return false;
    do {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    } while (c != EOF && !std::isspace(c) && c != '#');
    if (c == '#') in.unget();
    return true;
}

long parse_header_int(std::istream& in, const std::string& path, const char* what) {
    std::string tok;
    if (!next_header_token(in, tok)) {
        throw std::runtime_error("malformed PGM header in '" + path + "': missing " + what);
    }
    try {
        size_t pos = 0;
        long v = std::stol(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("malformed PGM header in '" + path + "': bad " +
                                 std::string(what) + " '" + tok + "'");
    }
}

}  // namespace

GrayImage load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open PGM file '" + path + "': no such file");
    }

    std::string magic;
    if (!next_header_token(in, magic) || (magic != "P2" && magic != "P5")) {
        throw std::runtime_error("malformed PGM header in '" + path +
                                 "': expected magic P2 or P5");
    }
    const long cols = parse_header_int(in, path, "width");
    const long rows = parse_header_int(in, path, "height");
    const long maxval = parse_header_int(in, path, "maxval");
    if (cols <= 0 || rows <= 0) {
        throw std::runtime_error("malformed PGM header in '" + path + "': non-positive size");
    }
    if (maxval <= 0 || maxval > 255) {
        throw std::runtime_error("unsupported PGM maxval " + std::to_string(maxval) + " in '" +
                                 path + "': must be in [1,255]");
    }

    GrayImage img(static_cast<int>(rows), static_cast<int>(cols));
    const size_t n = img.size();

    if (magic == "P5") {
        // Exactly one whitespace byte separates maxval from the payload.
        std::vector<unsigned char> buf(n);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n));
        if (static_cast<size_t>(in.gcount()) != n) {
            throw std::runtime_error("truncated PGM pixel data in '" + path + "': expected " +
                                     std::to_string(n) + " bytes, got " +
                                     std::to_string(in.gcount()));
        }
        for (size_t i = 0; i < n; ++i) img.pixels[i] = static_cast<double>(buf[i]);
    } else {
        for (size_t i = 0; i < n; ++i) {
            std::string tok;
            if (!next_header_token(in, tok)) {
                throw std::runtime_error("truncated PGM pixel data in '" + path + "': expected " +
                                         std::to_string(n) + " samples, got " +
                                         std::to_string(i));
            }
            long v;
            try {
                size_t pos = 0;
                v = std::stol(tok, &pos);
                if (pos != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw std::runtime_error("malformed PGM sample '" + tok + "' in '" + path + "'");
            }
            if (v < 0 || v > maxval) {
                throw std::runtime_error("PGM sample " + std::to_string(v) + " out of range in '" +
                                         path + "'");
            }
            img.pixels[i] = static_cast<double>(v);
        }
    }
    return img;
}

void save_pgm(const GrayImage& image, const std::string& path) {
    if (image.rows <= 0 || image.cols <= 0 ||
        image.pixels.size() != static_cast<size_t>(image.rows) * image.cols) {
        throw std::invalid_argument("save_pgm: invalid image dimensions");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << "P5\n" << image.cols << " " << image.rows << "\n255\n";
    std::vector<unsigned char> buf(image.size());
    for (size_t i = 0; i < image.size(); ++i) {
        // round half away from zero, then clamp
        double r = std::round(image.pixels[i]);
        if (r < 0.0) r = 0.0;
        if (r > 255.0) r = 255.0;
        buf[i] = static_cast<unsigned char>(r);
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) {
        throw std::runtime_error("failed writing pixel data to '" + path + "'");
    }
}

GrayImage from_rgb_average(const GrayImage& r, const GrayImage& g, const GrayImage& b) {
    if (!r.same_shape(g) || !r.same_shape(b)) {
        throw std::invalid_argument("from_rgb_average: channel dimensions differ");
    }
    GrayImage out(r.rows, r.cols);
    for (size_t i = 0; i < out.size(); ++i) {
        out.pixels[i] = (r.pixels[i] + g.pixels[i] + b.pixels[i]) / 3.0;
    }
    return out;
}

GrayImage clamp_to_range(const GrayImage& image) {
    GrayImage out = image;
    for (double& p : out.pixels) {
        if (p < 0.0) p = 0.0;
        else if (p > 255.0) p = 255.0;
    }
    return out;
}

GrayImage center_crop(const GrayImage& image, int size) {
    if (size <= 0 || size > image.rows || size > image.cols) {
        throw std::invalid_argument("center_crop: requested size " + std::to_string(size) +
                                    " exceeds image " + std::to_string(image.rows) + "x" +
                                    std::to_string(image.cols));
    }
    const int r0 = (image.rows - size) / 2;
    const int c0 = (image.cols - size) / 2;
    GrayImage out(size, size);
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) out.at(r, c) = image.at(r0 + r, c0 + c);
    return out;
}

double frobenius_norm(const GrayImage& image) {
    double s = 0.0;
    for (double p : image.pixels) s += p * p;
    return std::sqrt(s);
}

bool all_finite(const GrayImage& image) {
    for (double p : image.pixels) {
        if (!std::isfinite(p)) return false;
    }
    return true;
}

}  // namespace ggd
