#ifndef GGD_LOWRANK_TYPES_HPP
#define GGD_LOWRANK_TYPES_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>

namespace ggd::lowrank {

enum class Backend { exact, mcla, alb, pime, rsvd };

std::string backend_name(Backend b);
Backend backend_from_name(const std::string& name);

/// Common output contract of all five backends: the top-L approximate
/// singular triplets (sigma, u, v) of the input matrix, sigma sorted
/// non-increasing, U and V column-orthonormal. Each right vector's
/// largest-magnitude component is made positive, with the left vector
/// flipped alongside it, so cross-backend comparisons are well-posed.
struct SingularTriplets {
    Eigen::VectorXd values;         // L, non-increasing, >= 0
    Eigen::MatrixXd left_vectors;   // n x L
    Eigen::MatrixXd right_vectors;  // n x L
    Eigen::VectorXd residuals;      // L, ||A v - sigma u||_2; empty if not computed
    int iterations = 0;
    bool converged = true;

    Eigen::Index rank() const { return values.size(); }
};

struct BackendOptions {
    /// eta for MCLA, delta_tol for ALB and PIME; unset picks the backend
    /// default (1e-4 for MCLA, 1e-8 otherwise). Must lie in (0,1) when set.
    std::optional<double> tolerance;
    int max_iterations = 500;
    uint64_t seed = 0;
    int lanczos_steps = 0;    // ALB working subspace h; 0 = max(2L+1, 20) capped at n
    bool harmonic = false;    // ALB harmonic-Ritz restart path
    int oversampling = 0;     // RSVD extra sample columns
    int power_iterations = 0; // RSVD power passes
    int mcla_batch = 0;       // MCLA L'; 0 = L

    double resolve_tolerance(double backend_default) const;
};

/// Applies the shared output conventions in place: sort by sigma descending,
/// fix the sign of each (u, v) pair, and fill per-triplet residuals
/// ||A v - sigma u||_2.
void finalize_triplets(const Eigen::MatrixXd& a, SingularTriplets& t);

}  // namespace ggd::lowrank

#endif
