#include "ggd/lowrank/mcla.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "ggd/lowrank/dense.hpp"
#include "ggd/rng.hpp"

namespace ggd::lowrank {

namespace {

// Draws `count` distinct column indices of a, uniformly without replacement.
std::vector<Eigen::Index> draw_columns(RandomStream& rng, Eigen::Index n, int count) {
    std::vector<Eigen::Index> pool(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) pool[static_cast<size_t>(i)] = i;
    std::vector<Eigen::Index> picked(static_cast<size_t>(count));
    for (int t = 0; t < count; ++t) {
        const uint64_t j = rng.uniform_below(static_cast<uint64_t>(n - t));
        picked[static_cast<size_t>(t)] = pool[static_cast<size_t>(t + j)];
        std::swap(pool[static_cast<size_t>(t)], pool[static_cast<size_t>(t + j)]);
    }
    return picked;
}

}  // namespace

SingularTriplets mcla(const Eigen::MatrixXd& a, int L, const BackendOptions& opts,
                      std::vector<double>* norm_history) {
    const Eigen::Index m = a.rows(), n = a.cols();
    if (L < 1 || L > std::min(m, n)) {
        throw std::invalid_argument("mcla: L out of range [1, min(m,n)]");
    }
    const int batch = opts.mcla_batch > 0 ? opts.mcla_batch : L;
    if (batch > n) {
        throw std::invalid_argument("mcla: batch L' exceeds column count");
    }
    const double eta = opts.resolve_tolerance(1e-4);
    RandomStream rng(opts.seed);

    // Initial basis: modified Gram-Schmidt of L random columns; redraw when
    // the columns are rank-deficient.
    Eigen::MatrixXd basis(m, L);
    {
        bool ok = false;
        for (int attempt = 0; attempt < 10 && !ok; ++attempt) {
            const auto cols = draw_columns(rng, n, L);
            Eigen::MatrixXd sample(m, L);
            for (int j = 0; j < L; ++j) sample.col(j) = a.col(cols[static_cast<size_t>(j)]);
            MgsResult qr = mgs_qr(sample);
            if (qr.rank == L) {
                basis = qr.q;
                ok = true;
            }
        }
        if (!ok) {
            throw std::runtime_error(
                "mcla: drawn columns span fewer than L dimensions after 10 redraws");
        }
    }

    // ||B|| with B = X X^T A never needs B itself: ||B||_F = ||X^T A||_F.
    Eigen::MatrixXd projected = basis.transpose() * a;  // L x n
    double norm_prev = projected.norm();
    if (norm_history) norm_history->push_back(norm_prev);

    int iterations = 0;
    bool converged = false;
    Eigen::MatrixXd enlarged(m, L + batch);
    for (int t = 1; t <= opts.max_iterations; ++t) {
        iterations = t;
        enlarged.leftCols(L) = basis;
        const auto cols = draw_columns(rng, n, batch);
        for (int j = 0; j < batch; ++j) {
            enlarged.col(L + j) = a.col(cols[static_cast<size_t>(j)]);
        }
        // MGS keeps the first L columns (already orthonormal) unchanged;
        // dependent draws simply drop out of the enlarged basis.
        MgsResult qr = mgs_qr(enlarged);
        Eigen::Index p = 0;
        Eigen::MatrixXd w(m, qr.rank);
        for (Eigen::Index j = 0; j < L + batch; ++j) {
            if (qr.r(j, j) != 0.0) w.col(p++) = qr.q.col(j);
        }

        const Eigen::MatrixXd ata_w = a.transpose() * w;            // n x p
        const Eigen::MatrixXd c = ata_w.transpose() * ata_w;        // p x p Gram
        SingularTriplets top = exact_symmetric_svd(c, L);
        basis.noalias() = w * top.right_vectors;

        projected.noalias() = basis.transpose() * a;
        const double norm_curr = projected.norm();
        if (norm_history) norm_history->push_back(norm_curr);

        if (norm_curr > 0.0 && norm_prev / norm_curr > 1.0 - eta) {
            norm_prev = norm_curr;
            converged = true;
            break;
        }
        norm_prev = norm_curr;
    }

    SingularTriplets out;
    out.values.resize(L);
    out.left_vectors.resize(m, L);
    out.right_vectors.resize(n, L);
    out.iterations = iterations;
    out.converged = converged;
    for (int l = 0; l < L; ++l) {
        const double sigma = projected.row(l).norm();
        out.values(l) = sigma;
        out.left_vectors.col(l) = basis.col(l);
        if (sigma > 0.0) {
            out.right_vectors.col(l) = projected.row(l).transpose() / sigma;
        } else {
            Eigen::VectorXd cand = Eigen::VectorXd::Zero(n);
            cand(l % n) = 1.0;
            orthogonalize_against(out.right_vectors, l, cand);
            out.right_vectors.col(l) = cand.normalized();
        }
    }
    finalize_triplets(a, out);
    return out;
}

}  // namespace ggd::lowrank
