#include "ggd/gramian.hpp"

#include <cmath>
#include <stdexcept>

namespace ggd {

namespace {

// Recursive pairwise sum over a contiguous range of a matrix column/row view.
double pairwise_sum(const double* v, Eigen::Index n) {
    if (n <= 8) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const Eigen::Index half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

}  // namespace

GramianMatrix gramian_from_distances(GeodesicMatrix dist) {
    auto& d = dist.d;
    const Eigen::Index n = d.rows();
    if (n == 0 || d.cols() != n) {
        throw std::invalid_argument("gramian_from_distances: matrix must be square and non-empty");
    }
    const double scale = d.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (d(i, i) != 0.0) {
            throw std::invalid_argument("gramian_from_distances: diagonal must be zero");
        }
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double a = d(i, j), b = d(j, i);
            if (!std::isfinite(a) || !std::isfinite(b)) {
                throw std::invalid_argument("gramian_from_distances: non-finite entry");
            }
            if (std::abs(a - b) > 1e-12 * std::max(1.0, scale)) {
                throw std::invalid_argument("gramian_from_distances: matrix is not symmetric");
            }
        }
    }

    // The input is symmetric, so column means equal row means.
    Eigen::VectorXd row_mean(n);
    Eigen::VectorXd col(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        col = d.row(i);
        row_mean(i) = pairwise_sum(col.data(), n) / static_cast<double>(n);
    }
    const double grand_mean = pairwise_sum(row_mean.data(), n) / static_cast<double>(n);

    for (Eigen::Index j = 0; j < n; ++j) {
        const double mj = row_mean(j) - grand_mean;
        for (Eigen::Index i = 0; i < n; ++i) {
            d(i, j) = -0.5 * (d(i, j) - row_mean(i) - mj);
        }
    }

    GramianMatrix out;
    out.g = std::move(dist.d);
    return out;
}

}  // namespace ggd
