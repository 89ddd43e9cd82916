#include <doctest.h>

#include <cmath>

#include "ggd/metrics.hpp"
#include "ggd/noise.hpp"
#include "ggd/pipeline.hpp"
#include "ggd/rng.hpp"
#include "support/test_matrices.hpp"

using namespace ggd;

namespace {

GrayImage gradient_texture(int n, uint64_t seed) {
    RandomStream rng(seed);
    GrayImage img(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            img.at(i, j) = 60.0 + 120.0 * (std::sin(0.35 * i) * std::sin(0.25 * j) + 1.0) / 2.0 +
                           25.0 * rng.uniform01();
    return img;
}

}  // namespace

TEST_CASE("project_patches: full basis is the identity") {
    GrayImage img = gradient_texture(6, 1);
    PatchMatrix p = extract_patches(img, 3);
    const Eigen::Index n = p.n_points();
    Eigen::MatrixXd basis = ggd_test::random_orthogonal(n, 2);
    PatchMatrix projected = project_patches(p, basis);
    CHECK((projected.data - p.data).cwiseAbs().maxCoeff() < 1e-10);
}

namespace {

// Orthonormal basis orthogonal to the constant vector, as Gramian singular
// vectors always are (the Gramian is double-centered).
Eigen::MatrixXd mean_free_basis(Eigen::Index n, Eigen::Index count, uint64_t seed) {
    Eigen::MatrixXd ext(n, count + 1);
    ext.col(0) = Eigen::VectorXd::Ones(n);
    ext.rightCols(count) = ggd_test::random_matrix(n, count, seed);
    return ggd::lowrank::mgs_qr(ext).q.rightCols(count);
}

}  // namespace

TEST_CASE("project_patches: columns orthogonal to the basis and the constant vanish") {
    const Eigen::Index n = 36;
    Eigen::MatrixXd basis = mean_free_basis(n, 5, 3);

    // build patch columns orthogonal to span{1, basis}
    Eigen::MatrixXd extended(n, 6);
    extended.col(0) = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
    extended.rightCols(5) = basis;
    PatchMatrix p;
    p.rho = 3;
    p.image_rows = 6;
    p.image_cols = 6;
    p.data = ggd_test::random_matrix(n, 9, 4);
    p.data -= extended * (extended.transpose() * p.data).eval();

    PatchMatrix projected = project_patches(p, basis);
    CHECK(projected.data.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("project_patches: idempotence") {
    GrayImage img = gradient_texture(7, 5);
    PatchMatrix p = extract_patches(img, 3);
    Eigen::MatrixXd basis = mean_free_basis(p.n_points(), 8, 6);
    PatchMatrix once = project_patches(p, basis);
    PatchMatrix twice = project_patches(once, basis);
    CHECK((twice.data - once.data).cwiseAbs().maxCoeff() < 1e-12 * (1.0 + once.data.norm()));
}

TEST_CASE("shepard_merge: unprojected patches reproduce the image exactly") {
    GrayImage img = gradient_texture(9, 7);
    for (int rho : {3, 5}) {
        PatchMatrix p = extract_patches(img, rho);
        GrayImage merged = shepard_merge(p, img.rows, img.cols);
        double max_err = 0.0;
        for (size_t i = 0; i < img.size(); ++i)
            max_err = std::max(max_err, std::abs(merged.pixels[i] - img.pixels[i]));
        CHECK(max_err < 1e-10);
    }
}

TEST_CASE("shepard_merge: equal-distance contributors carry equal weight") {
    // patches centered at (2,1) and (2,3) both cover (2,2) at distance 1;
    // opposite perturbations of their estimates must cancel exactly
    GrayImage img(5, 5, 100.0);
    PatchMatrix p = extract_patches(img, 3);
    const Eigen::Index left = 2 * 5 + 1, right = 2 * 5 + 3;
    const Eigen::Index slot_left = 1 * 3 + (2 - 1 + 1);   // offset (0,+1) within the window
    const Eigen::Index slot_right = 1 * 3 + (2 - 3 + 1);  // offset (0,-1)
    p.data(left, slot_left) += 9.0;
    p.data(right, slot_right) -= 9.0;
    GrayImage merged = shepard_merge(p, 5, 5);
    CHECK(merged.at(2, 2) == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("denoise: constant image is a fixed point for every backend") {
    GrayImage img(12, 12, 77.0);
    for (auto backend : {lowrank::Backend::exact, lowrank::Backend::mcla, lowrank::Backend::alb,
                         lowrank::Backend::pime, lowrank::Backend::rsvd}) {
        DenoiseParams params;
        params.delta = 4;
        params.rho = 3;
        params.rank = 5;
        params.backend = backend;
        params.seed = 42;
        GrayImage out = denoise(img, params);
        REQUIRE(out.same_shape(img));
        double max_err = 0.0;
        for (size_t i = 0; i < img.size(); ++i)
            max_err = std::max(max_err, std::abs(out.pixels[i] - 77.0));
        CHECK(max_err < 1e-9);
    }
}

TEST_CASE("denoise: improves a noisy textured image and stays in range") {
    GrayImage clean = gradient_texture(24, 11);
    NoiseSpec spec = calibrate_sigma(clean, 20.0, 0.5, 7);
    GrayImage noisy = contaminate(clean, spec);

    DenoiseParams params;
    params.delta = 8;
    params.rho = 3;
    params.rank = 12;
    params.backend = lowrank::Backend::exact;
    DenoiseReport report;
    GrayImage out = denoise(noisy, params, &report);

    const double noisy_psnr = psnr(clean, noisy);
    const double out_psnr = psnr(clean, out);
    CHECK(out_psnr > noisy_psnr);
    for (double p : out.pixels) {
        CHECK(p >= 0.0);
        CHECK(p <= 255.0);
    }
    CHECK(report.backend_converged);
    CHECK(report.svd_ms >= 0.0);
}

TEST_CASE("denoise: deterministic given (image, params)") {
    GrayImage clean = gradient_texture(16, 13);
    GrayImage noisy = contaminate(clean, NoiseSpec{20.0, 0.0, 3});
    DenoiseParams params;
    params.delta = 6;
    params.rho = 3;
    params.rank = 8;
    params.backend = lowrank::Backend::rsvd;
    params.seed = 11;
    GrayImage a = denoise(noisy, params);
    GrayImage b = denoise(noisy, params);
    CHECK(a.pixels == b.pixels);
}

TEST_CASE("denoise: cross-backend agreement on a small crop") {
    GrayImage clean = gradient_texture(20, 17);
    NoiseSpec spec = calibrate_sigma(clean, 20.0, 0.5, 19);
    GrayImage noisy = contaminate(clean, spec);

    DenoiseParams params;
    params.delta = 6;
    params.rho = 3;
    params.rank = 10;
    params.seed = 23;

    params.backend = lowrank::Backend::exact;
    GrayImage exact_out = denoise(noisy, params);
    params.backend = lowrank::Backend::rsvd;
    params.backend_options.oversampling = 5;
    params.backend_options.power_iterations = 2;
    GrayImage rsvd_out = denoise(noisy, params);

    const double p_exact = psnr(clean, exact_out);
    const double p_rsvd = psnr(clean, rsvd_out);
    CHECK(std::abs(p_exact - p_rsvd) < 0.5);
}

TEST_CASE("denoise: geodesic algorithm choice does not change the result") {
    GrayImage clean = gradient_texture(14, 29);
    GrayImage noisy = contaminate(clean, NoiseSpec{15.0, 0.0, 31});
    DenoiseParams params;
    params.delta = 5;
    params.rho = 3;
    params.rank = 6;
    params.geodesic_algorithm = GeodesicAlgorithm::dijkstra_all;
    GrayImage a = denoise(noisy, params);
    params.geodesic_algorithm = GeodesicAlgorithm::floyd;
    GrayImage b = denoise(noisy, params);
    // identical graphs; ulp-level shortest-path differences at most
    double max_err = 0.0;
    for (size_t i = 0; i < a.size(); ++i)
        max_err = std::max(max_err, std::abs(a.pixels[i] - b.pixels[i]));
    CHECK(max_err < 1e-6);
}
