#ifndef GGD_PIPELINE_HPP
#define GGD_PIPELINE_HPP

#include <cstdint>

#include "ggd/gramian.hpp"
#include "ggd/image.hpp"
#include "ggd/lowrank/backend.hpp"
#include "ggd/patch_graph.hpp"

namespace ggd {

struct DenoiseParams {
    int delta = 10;
    int rho = 5;
    int rank = 20;
    lowrank::Backend backend = lowrank::Backend::exact;
    lowrank::BackendOptions backend_options;
    GeodesicAlgorithm geodesic_algorithm = GeodesicAlgorithm::dijkstra_all;
    uint64_t seed = 0;
};

/// Wall-clock milliseconds per pipeline stage plus backend diagnostics.
struct DenoiseReport {
    double patches_ms = 0.0;
    double graph_ms = 0.0;
    double geodesic_ms = 0.0;
    double gramian_ms = 0.0;
    double svd_ms = 0.0;
    double project_ms = 0.0;
    double merge_ms = 0.0;
    bool backend_converged = true;
    int backend_iterations = 0;

    double total_ms() const {
        return patches_ms + graph_ms + geodesic_ms + gramian_ms + svd_ms + project_ms + merge_ms;
    }
};

/// Projects each patch-coordinate column of the patch matrix onto
/// span{1, v_1, ..., v_L}: the mean-free part of each column is projected
/// onto the leading right singular vectors and the column mean is kept
/// (the singular vectors are orthogonal to the constant vector because the
/// Gramian is double-centered).
PatchMatrix project_patches(const PatchMatrix& patches, const Eigen::MatrixXd& right_vectors);

/// Fuses overlapping patch estimates back into an image with Shepard
/// weights exp(-||x_k - x_t||^2), gathered over the patches whose window
/// covers the target pixel, and renormalized over that set.
GrayImage shepard_merge(const PatchMatrix& patches, int rows, int cols);

/// The full pipeline: patches -> kNN graph -> geodesics -> Gramian ->
/// top-L right singular vectors -> projection -> merge -> clamp.
GrayImage denoise(const GrayImage& image, const DenoiseParams& params,
                  DenoiseReport* report = nullptr);

}  // namespace ggd

#endif
