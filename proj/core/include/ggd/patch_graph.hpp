#ifndef GGD_PATCH_GRAPH_HPP
#define GGD_PATCH_GRAPH_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "ggd/image.hpp"

namespace ggd {

/// All rho x rho patches of an image, one vectorized patch per row.
/// Row k corresponds to the pixel with row-major index k; border windows are
/// filled by mirror reflection about the image edge (the border pixel itself
/// is not duplicated).
struct PatchMatrix {
    Eigen::MatrixXd data;  // n_points x rho^2
    int rho = 0;
    int image_rows = 0;
    int image_cols = 0;

    Eigen::Index n_points() const { return data.rows(); }
    Eigen::Index dim() const { return data.cols(); }
};

/// Undirected weighted graph on the patch set. Adjacency lists are sorted by
/// neighbor index and symmetrized by union, so every vertex keeps at least
/// delta incident edges.
struct NeighborGraph {
    int n_vertices = 0;
    int delta = 0;
    std::vector<std::vector<std::pair<int, double>>> adjacency;
};

/// Dense all-pairs shortest-path matrix.
struct GeodesicMatrix {
    Eigen::MatrixXd d;  // symmetric, zero diagonal, finite

    Eigen::Index n() const { return d.rows(); }
};

enum class GeodesicAlgorithm { floyd, dijkstra_all };

/// Alg. step 1: one vectorized rho x rho window per pixel.
/// rho must be odd and 3 <= rho <= min(rows, cols).
PatchMatrix extract_patches(const GrayImage& image, int rho);

/// Alg. step 2: exact delta-nearest-neighbor graph under the Euclidean patch
/// distance, ties broken by lower index, edge set symmetrized by union.
NeighborGraph knn_graph(const PatchMatrix& patches, int delta);

/// All-pairs shortest paths by Floyd-Warshall or repeated binary-heap
/// Dijkstra; both produce the same matrix on non-negative weights.
/// Throws (naming an unreachable vertex pair) when the graph is disconnected.
GeodesicMatrix geodesic_distances(const NeighborGraph& graph, GeodesicAlgorithm algorithm);

}  // namespace ggd

#endif
