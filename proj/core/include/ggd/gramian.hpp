#ifndef GGD_GRAMIAN_HPP
#define GGD_GRAMIAN_HPP

#include <Eigen/Dense>

#include "ggd/patch_graph.hpp"

namespace ggd {

/// Double-centered geodesic distance matrix. Symmetric, and every row and
/// column sums to zero up to roundoff.
struct GramianMatrix {
    Eigen::MatrixXd g;

    Eigen::Index n() const { return g.rows(); }
};

/// g[i,j] = -1/2 (d[i,j] - mu_i - mu_j + mu) with mu_i the row means and mu
/// the grand mean, applied to the distance matrix itself. The input is taken
/// by value so the caller can move it in and the transform runs in place.
/// Means use pairwise summation to keep the zero-sum property tight at
/// n^2 ~ 1e4.
GramianMatrix gramian_from_distances(GeodesicMatrix d);

}  // namespace ggd

#endif
