#ifndef GGD_LOWRANK_PIME_HPP
#define GGD_LOWRANK_PIME_HPP

#include "ggd/lowrank/types.hpp"

namespace ggd::lowrank {

/// Two-stage singular triplet solver for a symmetric matrix. Stage one runs
/// block Rayleigh-Ritz subspace iteration on C = A^T A (applied as two
/// products with A, never formed). If the resulting triplets already meet
/// the combined residual bound they are returned; otherwise stage two
/// refines them on the implicitly applied augmented operator
/// [[0, A^T], [A, 0]], seeded with (1/sqrt(2)) [v; u].
SingularTriplets pime(const Eigen::MatrixXd& a, int L, const BackendOptions& opts);

}  // namespace ggd::lowrank

#endif
