#include "ggd/lowrank/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ggd::lowrank {

namespace {

// Eigenvectors are accumulated as rows so the QL plane rotations stream
// two contiguous rows at a time.
using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline void rotate_rows(double* __restrict a, double* __restrict b, Eigen::Index n, double c,
                        double s) {
    for (Eigen::Index k = 0; k < n; ++k) {
        const double f = b[k];
        const double g = a[k];
        b[k] = s * g + c * f;
        a[k] = c * g - s * f;
    }
}

// Householder reduction of the symmetric matrix held in w (full storage,
// lower triangle authoritative) to tridiagonal form, accumulating the
// transform so that on exit the rows of w are the columns of Q with
// A = Q T Q^T.
void tridiagonalize(RowMat& w, Eigen::VectorXd& d, Eigen::VectorXd& e) {
    const Eigen::Index n = w.rows();
    d.resize(n);
    e.resize(n);
    Eigen::VectorXd p(n), q(n);

    for (Eigen::Index i = n - 1; i >= 1; --i) {
        const Eigen::Index l = i - 1;
        double h = 0.0;
        if (l > 0) {
            const double scale = w.row(i).head(i).cwiseAbs().sum();
            if (scale == 0.0) {
                e(i) = w(i, l);
            } else {
                w.row(i).head(i) /= scale;
                h = w.row(i).head(i).squaredNorm();
                const double f = w(i, l);
                const double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e(i) = scale * g;
                h -= f * g;
                w(i, l) = f - g;

                // p = A u / h over the leading i x i block, one pass over
                // the stored lower triangle
                p.head(i).setZero();
                for (Eigen::Index j = 0; j < i; ++j) {
                    p(j) += w.row(j).head(j + 1).dot(w.row(i).head(j + 1));
                    p.head(j) += w(i, j) * w.row(j).head(j).transpose();
                }
                p.head(i) /= h;
                const double udotp = p.head(i).dot(w.row(i).head(i));
                const double hh = udotp / (h + h);
                q.head(i) = p.head(i) - hh * w.row(i).head(i).transpose();

                // A -= u q^T + q u^T (lower triangle)
                for (Eigen::Index j = 0; j < i; ++j) {
                    const double fj = w(i, j);
                    const double qj = q(j);
                    w.row(j).head(j + 1) -=
                        fj * q.head(j + 1).transpose() + qj * w.row(i).head(j + 1);
                }
            }
        } else {
            e(i) = w(i, l);
        }
        d(i) = h;
    }

    // Accumulate Q^T into the rows of w.
    d(0) = 0.0;
    e(0) = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i > 0 && d(i) != 0.0) {
            const double h = d(i);
            for (Eigen::Index j = 0; j < i; ++j) {
                const double g = w.row(j).head(i).dot(w.row(i).head(i)) / h;
                w.row(j).head(i) -= g * w.row(i).head(i);
            }
        }
        d(i) = w(i, i);
        w(i, i) = 1.0;
        w.row(i).head(i).setZero();
        for (Eigen::Index j = 0; j < i; ++j) w(j, i) = 0.0;
    }
}

// Implicit-shift QL on the tridiagonal (d, e), rotations applied to the
// eigenvector rows of w. On exit d holds eigenvalues (unordered) and the
// rows of w the matching eigenvectors.
int tridiagonal_ql(Eigen::VectorXd& d, Eigen::VectorXd& e, RowMat& w) {
    const Eigen::Index n = d.size();
    const Eigen::Index cols = w.cols();
    int total_iter = 0;
    for (Eigen::Index i = 1; i < n; ++i) e(i - 1) = e(i);
    e(n - 1) = 0.0;

    for (Eigen::Index l = 0; l < n; ++l) {
        int iter = 0;
        Eigen::Index m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d(m)) + std::abs(d(m + 1));
                if (std::abs(e(m)) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (iter++ == 30) {
                    throw std::runtime_error(
                        "symmetric_eigen: QL failed to converge within 30 sweeps per "
                        "eigenvalue (30*n total)");
                }
                ++total_iter;
                double g = (d(l + 1) - d(l)) / (2.0 * e(l));
                double r = std::hypot(g, 1.0);
                g = d(m) - d(l) + e(l) / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                Eigen::Index i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e(i);
                    const double b = c * e(i);
                    r = std::hypot(f, g);
                    e(i + 1) = r;
                    if (r == 0.0) {
                        d(i + 1) -= p;
                        e(m) = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d(i + 1) - p;
                    r = (d(i) - g) * s + 2.0 * c * b;
                    p = s * r;
                    d(i + 1) = g + p;
                    g = c * r - b;
                    rotate_rows(w.data() + i * cols, w.data() + (i + 1) * cols, cols, c, s);
                }
                if (r == 0.0 && i >= l) continue;
                d(l) -= p;
                e(l) = g;
                e(m) = 0.0;
            }
        } while (m != l);
    }
    return total_iter;
}

void full_symmetric_eigen_rowmajor(const Eigen::MatrixXd& a, Eigen::VectorXd& d, RowMat& w,
                                   int* iterations = nullptr) {
    const Eigen::Index n = a.rows();
    if (n == 0 || a.cols() != n) {
        throw std::invalid_argument("symmetric_eigen: matrix must be square and non-empty");
    }
    w = a;
    Eigen::VectorXd e;
    tridiagonalize(w, d, e);
    const int iters = (n > 1) ? tridiagonal_ql(d, e, w) : 0;
    if (iterations) *iterations = iters;
}

void check_symmetric(const Eigen::MatrixXd& a, double tol) {
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
            if (std::abs(a(i, j) - a(j, i)) > tol * scale) {
                throw std::invalid_argument("exact_symmetric_svd: matrix is not symmetric");
            }
        }
    }
}

// SVD of a square matrix through the symmetric eigendecomposition of
// [[0, S^T], [S, 0]], whose positive eigenvalues are the singular values
// with eigenvectors (v; u)/sqrt(2).
void square_svd_augmented(const Eigen::MatrixXd& s, Eigen::MatrixXd& u, Eigen::VectorXd& sigma,
                          Eigen::MatrixXd& v) {
    const Eigen::Index k = s.rows();
    Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(2 * k, 2 * k);
    aug.topRightCorner(k, k) = s.transpose();
    aug.bottomLeftCorner(k, k) = s;

    Eigen::VectorXd d;
    RowMat w;
    full_symmetric_eigen_rowmajor(aug, d, w);

    std::vector<Eigen::Index> order(static_cast<size_t>(2 * k));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index x, Eigen::Index y) { return d(x) > d(y); });

    u.resize(k, k);
    v.resize(k, k);
    sigma.resize(k);
    const double tiny = 1e-300;
    for (Eigen::Index t = 0; t < k; ++t) {
        const Eigen::Index idx = order[static_cast<size_t>(t)];
        sigma(t) = std::max(d(idx), 0.0);
        Eigen::VectorXd vv = w.row(idx).head(k);
        Eigen::VectorXd uu = w.row(idx).tail(k);
        const double nv = vv.norm(), nu = uu.norm();
        if (nv > tiny && nu > tiny) {
            v.col(t) = vv / nv;
            u.col(t) = uu / nu;
        } else {
            // null-space triplet: complete each side with a canonical vector
            // orthogonalized against the columns already extracted
            for (auto [mat, col] : {std::pair{&v, t}, std::pair{&u, t}}) {
                Eigen::VectorXd cand = Eigen::VectorXd::Zero(k);
                for (Eigen::Index basis = 0; basis < k; ++basis) {
                    cand.setZero();
                    cand(basis) = 1.0;
                    const double nrm = orthogonalize_against(*mat, col, cand);
                    if (nrm > 1e-8) {
                        mat->col(col) = cand / nrm;
                        break;
                    }
                }
            }
        }
    }
}

}  // namespace

void symmetric_eigen(const Eigen::MatrixXd& a, Eigen::VectorXd& eigenvalues,
                     Eigen::MatrixXd& eigenvectors) {
    Eigen::VectorXd d;
    RowMat w;
    full_symmetric_eigen_rowmajor(a, d, w);
    const Eigen::Index n = d.size();

    std::vector<Eigen::Index> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index x, Eigen::Index y) { return d(x) < d(y); });

    eigenvalues.resize(n);
    eigenvectors.resize(n, n);
    for (Eigen::Index t = 0; t < n; ++t) {
        eigenvalues(t) = d(order[static_cast<size_t>(t)]);
        eigenvectors.col(t) = w.row(order[static_cast<size_t>(t)]);
    }
}

SingularTriplets exact_symmetric_svd(const Eigen::MatrixXd& a, int L) {
    const Eigen::Index n = a.rows();
    if (L < 1 || L > n) {
        throw std::invalid_argument("exact_symmetric_svd: L out of range [1, n]");
    }
    check_symmetric(a, 1e-10);

    Eigen::VectorXd d;
    RowMat w;
    int iterations = 0;
    full_symmetric_eigen_rowmajor(a, d, w, &iterations);

    std::vector<Eigen::Index> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
        const double ax = std::abs(d(x)), ay = std::abs(d(y));
        if (ax != ay) return ax > ay;
        if (d(x) != d(y)) return d(x) > d(y);
        return x < y;
    });

    SingularTriplets t;
    t.values.resize(L);
    t.left_vectors.resize(n, L);
    t.right_vectors.resize(n, L);
    t.iterations = iterations;
    t.converged = true;
    for (int l = 0; l < L; ++l) {
        const Eigen::Index idx = order[static_cast<size_t>(l)];
        const double lambda = d(idx);
        t.values(l) = std::abs(lambda);
        t.right_vectors.col(l) = w.row(idx);
        t.left_vectors.col(l) = (lambda < 0.0 ? -1.0 : 1.0) * t.right_vectors.col(l);
    }
    finalize_triplets(a, t);
    return t;
}

void dense_svd(const Eigen::MatrixXd& a, Eigen::MatrixXd& u, Eigen::VectorXd& sigma,
               Eigen::MatrixXd& v) {
    const Eigen::Index m = a.rows(), n = a.cols();
    if (m == 0 || n == 0) {
        throw std::invalid_argument("dense_svd: empty matrix");
    }
    if (m == n) {
        square_svd_augmented(a, u, sigma, v);
    } else if (m > n) {
        MgsResult qr = mgs_qr(a);
        Eigen::MatrixXd w;
        square_svd_augmented(qr.r, w, sigma, v);
        u = qr.q * w;
    } else {
        MgsResult qr = mgs_qr(a.transpose());
        Eigen::MatrixXd w, z;
        square_svd_augmented(qr.r.transpose(), u, sigma, z);
        v = qr.q * z;
    }
}

MgsResult mgs_qr(const Eigen::MatrixXd& a, double drop_tol) {
    const Eigen::Index m = a.rows(), n = a.cols();
    MgsResult out;
    out.q = a;
    out.r = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double initial_norm = out.q.col(j).norm();
        for (Eigen::Index i = 0; i < j; ++i) {
            const double rij = out.q.col(i).dot(out.q.col(j));
            out.r(i, j) += rij;
            out.q.col(j) -= rij * out.q.col(i);
        }
        double nrm = out.q.col(j).norm();
        if (nrm < initial_norm / std::sqrt(2.0)) {
            for (Eigen::Index i = 0; i < j; ++i) {
                const double rij = out.q.col(i).dot(out.q.col(j));
                out.r(i, j) += rij;
                out.q.col(j) -= rij * out.q.col(i);
            }
            nrm = out.q.col(j).norm();
        }
        if (nrm <= drop_tol * std::max(initial_norm, 1e-300)) {
            out.q.col(j).setZero();
            out.r(j, j) = 0.0;
        } else {
            out.r(j, j) = nrm;
            out.q.col(j) /= nrm;
            ++out.rank;
        }
    }
    (void)m;
    return out;
}

double orthogonalize_against(const Eigen::MatrixXd& basis, Eigen::Index cols,
                             Eigen::VectorXd& v) {
    if (cols == 0) return v.norm();
    const double before = v.norm();
    Eigen::VectorXd coef = basis.leftCols(cols).transpose() * v;
    v.noalias() -= basis.leftCols(cols) * coef;
    double after = v.norm();
    if (after < before / std::sqrt(2.0)) {
        coef.noalias() = basis.leftCols(cols).transpose() * v;
        v.noalias() -= basis.leftCols(cols) * coef;
        after = v.norm();
    }
    return after;
}

}  // namespace ggd::lowrank
