#include "ggd/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace ggd {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

PatchMatrix project_patches(const PatchMatrix& patches, const Eigen::MatrixXd& right_vectors) {
    if (right_vectors.rows() != patches.n_points() || right_vectors.cols() < 1) {
        throw std::invalid_argument(
            "project_patches: right_vectors must be n_points x L with L >= 1");
    }
    // Double-centering puts the constant vector in the Gramian's null space,
    // so every prominent singular vector is orthogonal to it. The projection
    // therefore acts on the mean-free part of each patch-coordinate column;
    // the means ride through unchanged (on a constant image this makes the
    // pipeline an exact fixed point).
    const Eigen::RowVectorXd column_means = patches.data.colwise().mean();
    PatchMatrix out = patches;
    out.data = patches.data.rowwise() - column_means;
    out.data = right_vectors * (right_vectors.transpose() * out.data).eval();
    out.data.rowwise() += column_means;
    return out;
}

GrayImage shepard_merge(const PatchMatrix& patches, int rows, int cols) {
    if (patches.n_points() != static_cast<Eigen::Index>(rows) * cols) {
        throw std::invalid_argument("shepard_merge: patch count must equal rows*cols");
    }
    const int rho = patches.rho;
    const int half = (rho - 1) / 2;

    GrayImage out(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            double acc = 0.0;
            double weight_sum = 0.0;
            // patches centered within the inf-ball of radius (rho-1)/2 are
            // exactly those whose window covers (i, j)
            for (int dr = -half; dr <= half; ++dr) {
                const int ti = i + dr;
                if (ti < 0 || ti >= rows) continue;
                for (int dc = -half; dc <= half; ++dc) {
                    const int tj = j + dc;
                    if (tj < 0 || tj >= cols) continue;
                    const Eigen::Index t =
                        static_cast<Eigen::Index>(ti) * cols + tj;
                    // slot of pixel (i,j) inside the window centered at (ti,tj)
                    const Eigen::Index slot =
                        static_cast<Eigen::Index>(-dr + half) * rho + (-dc + half);
                    const double w = std::exp(-static_cast<double>(dr * dr + dc * dc));
                    acc += w * patches.data(t, slot);
                    weight_sum += w;
                }
            }
            out.at(i, j) = acc / weight_sum;
        }
    }
    return out;
}

GrayImage denoise(const GrayImage& image, const DenoiseParams& params, DenoiseReport* report) {
    DenoiseReport local;
    DenoiseReport& rep = report ? *report : local;

    auto t0 = Clock::now();
    PatchMatrix patches = extract_patches(image, params.rho);
    rep.patches_ms = ms_since(t0);

    t0 = Clock::now();
    NeighborGraph graph = knn_graph(patches, params.delta);
    rep.graph_ms = ms_since(t0);

    t0 = Clock::now();
    GeodesicMatrix geo = geodesic_distances(graph, params.geodesic_algorithm);
    graph.adjacency.clear();
    rep.geodesic_ms = ms_since(t0);

    t0 = Clock::now();
    GramianMatrix gram = gramian_from_distances(std::move(geo));
    rep.gramian_ms = ms_since(t0);

    t0 = Clock::now();
    lowrank::BackendOptions opts = params.backend_options;
    if (!opts.seed) opts.seed = params.seed;
    lowrank::SingularTriplets triplets;
    if (gram.g.cwiseAbs().maxCoeff() == 0.0) {
        // constant image: the Gramian is exactly zero and any orthonormal
        // set is a valid basis (the patch fluctuations being projected are
        // zero as well)
        const Eigen::Index n_points = gram.g.rows();
        triplets.values = Eigen::VectorXd::Zero(params.rank);
        triplets.left_vectors = Eigen::MatrixXd::Identity(n_points, params.rank);
        triplets.right_vectors = Eigen::MatrixXd::Identity(n_points, params.rank);
        triplets.residuals = Eigen::VectorXd::Zero(params.rank);
    } else {
        triplets = lowrank::compute_top_triplets(gram.g, params.rank, params.backend, opts);
    }
    gram.g.resize(0, 0);
    rep.svd_ms = ms_since(t0);
    rep.backend_converged = triplets.converged;
    rep.backend_iterations = triplets.iterations;

    t0 = Clock::now();
    PatchMatrix projected = project_patches(patches, triplets.right_vectors);
    rep.project_ms = ms_since(t0);

    t0 = Clock::now();
    GrayImage merged = shepard_merge(projected, image.rows, image.cols);
    rep.merge_ms = ms_since(t0);

    return clamp_to_range(merged);
}

}  // namespace ggd
