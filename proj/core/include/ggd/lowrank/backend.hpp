#ifndef GGD_LOWRANK_BACKEND_HPP
#define GGD_LOWRANK_BACKEND_HPP

#include "ggd/lowrank/types.hpp"

namespace ggd::lowrank {

/// Runs the selected backend on a symmetric matrix and returns the top-L
/// singular triplets under the common output contract.
SingularTriplets compute_top_triplets(const Eigen::MatrixXd& a, int L, Backend backend,
                                      const BackendOptions& opts);

}  // namespace ggd::lowrank

#endif
