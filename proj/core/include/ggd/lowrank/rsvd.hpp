#ifndef GGD_LOWRANK_RSVD_HPP
#define GGD_LOWRANK_RSVD_HPP

#include "ggd/lowrank/types.hpp"

namespace ggd::lowrank {

/// Randomized SVD. Samples the range of A with a seeded Gaussian block of
/// L + oversampling columns, optionally sharpens it with power iterations
/// (re-orthonormalized each pass), projects, and takes the dense SVD of the
/// small projected matrix. Defaults (no oversampling, no power iterations)
/// follow the plain two-stage scheme; both knobs are opt-in.
SingularTriplets rsvd(const Eigen::MatrixXd& a, int L, const BackendOptions& opts);

}  // namespace ggd::lowrank

#endif
