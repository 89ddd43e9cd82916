#include "ggd/lowrank/pime.hpp"

#include <cmath>
#include <stdexcept>

#include "ggd/lowrank/dense.hpp"
#include "ggd/rng.hpp"

namespace ggd::lowrank {

namespace {

// Orthonormalizes the block in place; rank-deficient columns are replaced by
// random directions orthogonal to the rest.
void orthonormalize_block(Eigen::MatrixXd& x, RandomStream& rng) {
    MgsResult qr = mgs_qr(x);
    x = qr.q;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        if (qr.r(j, j) == 0.0) {
            Eigen::VectorXd v(x.rows());
            for (Eigen::Index i = 0; i < x.rows(); ++i) v(i) = rng.gaussian();
            const double nrm = orthogonalize_against(x, x.cols(), v);
            x.col(j) = v / nrm;
        }
    }
}

// One Rayleigh-Ritz extraction: given X orthonormal and Z = Op X, rotates
// both so the columns are Ritz vectors with values sorted descending.
Eigen::VectorXd rayleigh_ritz(Eigen::MatrixXd& x, Eigen::MatrixXd& z) {
    Eigen::MatrixXd h = x.transpose() * z;
    h = 0.5 * (h + h.transpose().eval());
    Eigen::VectorXd evals;
    Eigen::MatrixXd evecs;
    symmetric_eigen(h, evals, evecs);
    // ascending -> descending
    const Eigen::Index b = evals.size();
    Eigen::MatrixXd w(b, b);
    Eigen::VectorXd lambda(b);
    for (Eigen::Index j = 0; j < b; ++j) {
        lambda(j) = evals(b - 1 - j);
        w.col(j) = evecs.col(b - 1 - j);
    }
    x = (x * w).eval();
    z = (z * w).eval();
    return lambda;
}

}  // namespace

SingularTriplets pime(const Eigen::MatrixXd& a, int L, const BackendOptions& opts) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n) {
        throw std::invalid_argument("pime: matrix must be square (symmetric)");
    }
    if (L < 1 || L > n) {
        throw std::invalid_argument("pime: L out of range [1, n]");
    }
    const double delta = opts.resolve_tolerance(1e-8);
    const int max_iter = std::max(1, opts.max_iterations);
    RandomStream rng(opts.seed);

    const Eigen::Index block = std::min<Eigen::Index>(n, L + std::min(L, 10));

    // ---- stage one: block Rayleigh-Ritz on C = A^T A, applied implicitly
    Eigen::MatrixXd x(n, block);
    for (Eigen::Index j = 0; j < block; ++j)
        for (Eigen::Index i = 0; i < n; ++i) x(i, j) = rng.gaussian();
    orthonormalize_block(x, rng);

    Eigen::MatrixXd z;
    Eigen::VectorXd lambda;
    double c_norm = 0.0;  // ||C||_2 estimate, largest Ritz value seen
    int iterations = 0;
    bool stage1_ok = false;
    for (int t = 0; t < max_iter; ++t) {
        ++iterations;
        z.noalias() = a * (a * x).eval();
        lambda = rayleigh_ritz(x, z);
        c_norm = std::max(c_norm, std::abs(lambda(0)));

        bool all_ok = true;
        for (int i = 0; i < L; ++i) {
            const double res = (z.col(i) - lambda(i) * x.col(i)).norm();
            if (res > std::sqrt(std::max(std::abs(lambda(i)), 0.0) * c_norm) * delta) {
                all_ok = false;
                break;
            }
        }
        if (all_ok) {
            stage1_ok = true;
            break;
        }
        if (t + 1 < max_iter) {
            x = z;
            orthonormalize_block(x, rng);
        }
    }

    const double a_norm = std::sqrt(c_norm);  // ||A||_2 estimate

    SingularTriplets out;
    out.values.resize(L);
    out.left_vectors.resize(n, L);
    out.right_vectors.resize(n, L);
    out.iterations = iterations;

    for (int i = 0; i < L; ++i) {
        const double sigma = std::sqrt(std::max(std::abs(lambda(i)), 0.0));
        out.values(i) = sigma;
        out.right_vectors.col(i) = x.col(i);
        if (sigma > 1e-14 * a_norm) {
            out.left_vectors.col(i) = a * x.col(i) / sigma;
        } else {
            // null-space triplet: left vector has no constraint from A
            Eigen::VectorXd v(n);
            for (Eigen::Index k = 0; k < n; ++k) v(k) = rng.gaussian();
            const double nrm = orthogonalize_against(out.left_vectors, i, v);
            out.left_vectors.col(i) = v / nrm;
        }
    }

    // combined residual of the assembled triplets; the first term vanishes
    // by the construction u = A v / sigma
    bool triplets_ok = stage1_ok;
    if (stage1_ok) {
        for (int i = 0; i < L; ++i) {
            const double r_v = (a * out.right_vectors.col(i) -
                                out.values(i) * out.left_vectors.col(i)).squaredNorm();
            const double r_u = (a * out.left_vectors.col(i) -
                                out.values(i) * out.right_vectors.col(i)).squaredNorm();
            if (std::sqrt(r_v + r_u) > a_norm * delta) {
                triplets_ok = false;
                break;
            }
        }
    }
    if (triplets_ok) {
        out.converged = true;
        finalize_triplets(a, out);
        return out;
    }

    // ---- stage two: refine on the augmented operator [[0, A^T],[A, 0]],
    // applied implicitly; eigenvectors are (v; u)/sqrt(2) with value sigma
    const Eigen::Index dim2 = 2 * n;
    const Eigen::Index block2 = std::min<Eigen::Index>(dim2, L + std::min(L, 10));
    Eigen::MatrixXd y(dim2, block2);
    for (int i = 0; i < L; ++i) {
        y.col(i).head(n) = out.right_vectors.col(i) / std::sqrt(2.0);
        y.col(i).tail(n) = out.left_vectors.col(i) / std::sqrt(2.0);
    }
    for (Eigen::Index j = L; j < block2; ++j)
        for (Eigen::Index i = 0; i < dim2; ++i) y(i, j) = rng.gaussian();
    orthonormalize_block(y, rng);

    const auto apply_augmented = [&](const Eigen::MatrixXd& in) {
        Eigen::MatrixXd res(dim2, in.cols());
        res.topRows(n).noalias() = a.transpose() * in.bottomRows(n);
        res.bottomRows(n).noalias() = a * in.topRows(n);
        return res;
    };

    Eigen::MatrixXd zy;
    Eigen::VectorXd mu;
    bool stage2_ok = false;
    for (int t = 0; t < max_iter; ++t) {
        ++out.iterations;
        zy = apply_augmented(y);
        mu = rayleigh_ritz(y, zy);

        bool all_ok = true;
        for (int i = 0; i < L; ++i) {
            const double res = (zy.col(i) - mu(i) * y.col(i)).norm();
            if (res > std::sqrt(2.0) * a_norm * delta) {
                all_ok = false;
                break;
            }
        }
        if (all_ok) {
            stage2_ok = true;
            break;
        }
        if (t + 1 < max_iter) {
            y = zy;
            orthonormalize_block(y, rng);
        }
    }

    for (int i = 0; i < L; ++i) {
        out.values(i) = std::abs(mu(i));
        Eigen::VectorXd v = y.col(i).head(n);
        Eigen::VectorXd u = y.col(i).tail(n);
        const double nv = v.norm(), nu = u.norm();
        if (nv > 1e-14) out.right_vectors.col(i) = v / nv;
        if (nu > 1e-14) out.left_vectors.col(i) = u / nu;
    }
    out.converged = stage2_ok;
    finalize_triplets(a, out);
    return out;
}

}  // namespace ggd::lowrank
