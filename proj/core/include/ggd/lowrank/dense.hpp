#ifndef GGD_LOWRANK_DENSE_HPP
#define GGD_LOWRANK_DENSE_HPP

#include <Eigen/Dense>

#include "ggd/lowrank/types.hpp"

namespace ggd::lowrank {

/// Full eigendecomposition of a symmetric matrix by Householder
/// tridiagonalization followed by implicit-shift QL. Eigenpairs are
/// converted to singular triplets (sigma = |lambda|, v = eigenvector,
/// u = sign(lambda) v), sorted by sigma descending, and the top L returned.
/// This is the baseline the four approximation backends are tested against.
SingularTriplets exact_symmetric_svd(const Eigen::MatrixXd& a, int L);

/// Eigendecomposition used internally by exact_symmetric_svd and by the
/// small projected problems of the iterative backends. Returns eigenvalues
/// in ascending order with matching eigenvector columns.
void symmetric_eigen(const Eigen::MatrixXd& a, Eigen::VectorXd& eigenvalues,
                     Eigen::MatrixXd& eigenvectors);

/// Thin SVD of a small dense matrix: QR pre-reduction on the long side, then
/// the eigendecomposition of the augmented operator [[0, R^T],[R, 0]].
/// Returns U (m x r), sigma (r, descending), V (n x r) with r = min(m, n).
void dense_svd(const Eigen::MatrixXd& a, Eigen::MatrixXd& u, Eigen::VectorXd& sigma,
               Eigen::MatrixXd& v);

/// Modified Gram-Schmidt QR with one DGKS reorthogonalization pass.
/// Columns whose norm falls below drop_tol * ||column|| are zeroed and their
/// R diagonal set to 0; the returned rank counts the kept columns.
struct MgsResult {
    Eigen::MatrixXd q;
    Eigen::MatrixXd r;
    int rank = 0;
};
MgsResult mgs_qr(const Eigen::MatrixXd& a, double drop_tol = 1e-12);

/// One MGS sweep of v against the leading `cols` columns of basis, repeated
/// once more when the norm drops below 1/sqrt(2). Returns the final norm
/// (not applied to v).
double orthogonalize_against(const Eigen::MatrixXd& basis, Eigen::Index cols,
                             Eigen::VectorXd& v);

}  // namespace ggd::lowrank

#endif
