#ifndef GGD_LOWRANK_MCLA_HPP
#define GGD_LOWRANK_MCLA_HPP

#include <vector>

#include "ggd/lowrank/types.hpp"

namespace ggd::lowrank {

/// Monte Carlo low-rank approximation. Starts from an orthonormal basis of L
/// randomly drawn columns, then per iteration enlarges the basis with L'
/// fresh random columns, projects, and keeps the top-L eigenvectors of the
/// projected Gram matrix. Terminates when the Frobenius norm of the current
/// rank-L approximation stalls (||B^(t-1)||/||B^(t)|| > 1 - eta) or at
/// max_iterations. The approximation norm is non-decreasing per iteration;
/// pass norm_history to observe it.
SingularTriplets mcla(const Eigen::MatrixXd& a, int L, const BackendOptions& opts,
                      std::vector<double>* norm_history = nullptr);

}  // namespace ggd::lowrank

#endif
