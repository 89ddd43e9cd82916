#ifndef GGD_LOWRANK_LANCZOS_HPP
#define GGD_LOWRANK_LANCZOS_HPP

#include "ggd/lowrank/types.hpp"

namespace ggd::lowrank {

/// Result of the Lanczos bidiagonalization run: A P = Q B and
/// A^T Q = P B^T + r e_h^T with P, Q column-orthonormal and P^T r = 0.
/// B is upper bidiagonal after a fresh run; restarted factorizations carry
/// extra upper-triangular fill, so it is stored dense.
struct Bidiagonalization {
    Eigen::MatrixXd p;  // n x h
    Eigen::MatrixXd q;  // m x h
    Eigen::MatrixXd b;  // h x h
    Eigen::VectorXd residual;  // r, length n
};

/// Runs `steps` Golub-Kahan steps from the unit start vector p1, with full
/// reorthogonalization of every new column. Breakdown (alpha or beta below
/// 1e-14 ||A||_F) restarts that column from a random unit vector orthogonal
/// to the basis built so far, keeping the factorization exact.
Bidiagonalization lanczos_bidiagonalization(const Eigen::MatrixXd& a, const Eigen::VectorXd& p1,
                                            int steps, uint64_t seed = 12345);

/// Per-restart health of the maintained factorization, filled when a
/// diagnostics pointer is passed to alb. Residuals are relative to ||A||_F.
struct AlbDiagnostics {
    double max_ap_residual = 0.0;   // max ||A P - Q B|| / ||A||
    double max_atq_residual = 0.0;  // max ||A^T Q - P B^T - r e^T|| / ||A||
    int restarts = 0;
};

/// Augmented Lanczos bidiagonalization: repeatedly factorizes on an
/// h-dimensional Krylov subspace, accepts the top-L triplets of the small
/// projected matrix once ||r|| |e_h^T u_l| <= tol ||A||_2 for all of them,
/// and otherwise restarts from the L leading Ritz (or harmonic Ritz)
/// vectors.
SingularTriplets alb(const Eigen::MatrixXd& a, int L, const BackendOptions& opts,
                     AlbDiagnostics* diagnostics = nullptr);

}  // namespace ggd::lowrank

#endif
