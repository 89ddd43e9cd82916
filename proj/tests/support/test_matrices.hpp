#ifndef GGD_TESTS_SUPPORT_TEST_MATRICES_HPP
#define GGD_TESTS_SUPPORT_TEST_MATRICES_HPP

#include <Eigen/Dense>
#include <cstdint>

#include "ggd/lowrank/dense.hpp"
#include "ggd/rng.hpp"

namespace ggd_test {

inline Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, uint64_t seed) {
    ggd::RandomStream rng(seed);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.gaussian();
    return m;
}

inline Eigen::MatrixXd random_symmetric(Eigen::Index n, uint64_t seed) {
    Eigen::MatrixXd m = random_matrix(n, n, seed);
    return 0.5 * (m + m.transpose().eval());
}

inline Eigen::MatrixXd random_orthogonal(Eigen::Index n, uint64_t seed) {
    return ggd::lowrank::mgs_qr(random_matrix(n, n, seed)).q;
}

/// Symmetric matrix with prescribed eigenvalues (Q diag(lambda) Q^T for a
/// random orthogonal Q).
inline Eigen::MatrixXd symmetric_with_spectrum(const Eigen::VectorXd& lambda, uint64_t seed) {
    const Eigen::Index n = lambda.size();
    Eigen::MatrixXd q = random_orthogonal(n, seed);
    return q * lambda.asDiagonal() * q.transpose();
}

/// Spectrum sigma_1 * ratio^k with alternating signs; consecutive singular
/// values are separated by a relative gap of 1 - ratio.
inline Eigen::VectorXd geometric_spectrum(Eigen::Index n, double sigma1, double ratio,
                                          bool alternate_signs = true) {
    Eigen::VectorXd lambda(n);
    double v = sigma1;
    for (Eigen::Index i = 0; i < n; ++i) {
        lambda(i) = (alternate_signs && i % 2 == 1) ? -v : v;
        v *= ratio;
    }
    return lambda;
}

}  // namespace ggd_test

#endif
