#include "ggd/lowrank/rsvd.hpp"

#include <stdexcept>

#include "ggd/lowrank/dense.hpp"
#include "ggd/rng.hpp"

namespace ggd::lowrank {

namespace {

Eigen::MatrixXd gaussian_matrix(RandomStream& rng, Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.gaussian();
    return m;
}

}  // namespace

SingularTriplets rsvd(const Eigen::MatrixXd& a, int L, const BackendOptions& opts) {
    const Eigen::Index m = a.rows(), n = a.cols();
    if (opts.oversampling < 0 || opts.power_iterations < 0) {
        throw std::invalid_argument("rsvd: oversampling and power_iterations must be >= 0");
    }
    const Eigen::Index sample = static_cast<Eigen::Index>(L) + opts.oversampling;
    if (L < 1 || sample > std::min(m, n)) {
        throw std::invalid_argument("rsvd: need 1 <= L + oversampling <= min(m,n)");
    }
    RandomStream rng(opts.seed);

    bool converged = true;
    Eigen::Index rank = sample;
    MgsResult qr;
    for (int attempt = 0;; ++attempt) {
        Eigen::MatrixXd y = a * gaussian_matrix(rng, n, sample);
        for (int p = 0; p < opts.power_iterations; ++p) {
            qr = mgs_qr(y);
            y.noalias() = a * (a.transpose() * qr.q).eval();
        }
        qr = mgs_qr(y, 1e-14);
        if (qr.rank == sample || attempt == 1) {
            if (qr.rank < sample) converged = false;
            rank = qr.rank;
            break;
        }
    }

    // compact the basis when the sample block was rank deficient
    Eigen::MatrixXd q(m, rank);
    {
        Eigen::Index c = 0;
        for (Eigen::Index j = 0; j < sample; ++j) {
            if (qr.r(j, j) != 0.0) q.col(c++) = qr.q.col(j);
        }
    }

    const Eigen::MatrixXd b = q.transpose() * a;  // rank x n
    Eigen::MatrixXd w, v;
    Eigen::VectorXd sigma;
    dense_svd(b, w, sigma, v);

    const Eigen::Index keep = std::min<Eigen::Index>(L, rank);
    SingularTriplets out;
    out.values = sigma.head(keep);
    out.left_vectors = q * w.leftCols(keep);
    out.right_vectors = v.leftCols(keep);
    out.iterations = 1 + opts.power_iterations;
    out.converged = converged;
    finalize_triplets(a, out);
    return out;
}

}  // namespace ggd::lowrank
