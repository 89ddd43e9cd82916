#include "ggd/lowrank/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ggd/lowrank/dense.hpp"
#include "ggd/rng.hpp"

namespace ggd::lowrank {

namespace {

constexpr double kBreakdownRel = 1e-14;

struct GkState {
    Eigen::MatrixXd p;  // n x h
    Eigen::MatrixXd q;  // m x h
    Eigen::MatrixXd b;  // h x h
    Eigen::VectorXd r;  // length n, orthogonal to the columns of p
    Eigen::Index cols = 0;
    double norm_a = 0.0;  // Frobenius norm, used for the breakdown threshold
};

// Random unit vector orthogonal to the leading `cols` columns of basis.
Eigen::VectorXd random_orthogonal(const Eigen::MatrixXd& basis, Eigen::Index cols,
                                  RandomStream& rng) {
    const Eigen::Index n = basis.rows();
    for (int attempt = 0; attempt < 64; ++attempt) {
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.gaussian();
        const double nrm = orthogonalize_against(basis, cols, v);
        if (nrm > 1e-8 * std::sqrt(static_cast<double>(n))) return v / nrm;
    }
    throw std::runtime_error("lanczos: could not draw a vector outside the current subspace");
}

// Grows the factorization to `target` columns with the Golub-Kahan
// recursion, keeping A P = Q B and A^T Q = P B^T + r e^T exact through
// breakdowns. On entry state.r must hold A^T q_cols - P (B^T e_cols)
// reorthogonalized (the standing residual).
void extend(GkState& s, const Eigen::MatrixXd& a, Eigen::Index target, RandomStream& rng) {
    const double tol = kBreakdownRel * s.norm_a;
    while (s.cols < target) {
        const Eigen::Index j = s.cols;  // index of the column being added

        // next right vector from the residual
        double beta = s.r.norm();
        if (beta > tol) {
            s.p.col(j) = s.r / beta;
        } else {
            beta = 0.0;
            s.p.col(j) = random_orthogonal(s.p, j, rng);
        }
        s.b(j - 1, j) = beta;

        // next left vector
        Eigen::VectorXd q_new = a * s.p.col(j);
        q_new.noalias() -= s.q.leftCols(j) * (s.b.topRows(j).col(j));
        double alpha = orthogonalize_against(s.q, j, q_new);
        if (alpha > tol) {
            q_new /= alpha;
        } else {
            alpha = 0.0;
            q_new = random_orthogonal(s.q, j, rng);
        }
        s.b(j, j) = alpha;
        s.q.col(j) = q_new;
        s.cols = j + 1;

        // standing residual for the enlarged factorization
        s.r = a.transpose() * s.q.col(j) - alpha * s.p.col(j);
        orthogonalize_against(s.p, s.cols, s.r);
    }
}

// Fresh factorization started from p1.
GkState start(const Eigen::MatrixXd& a, const Eigen::VectorXd& p1, Eigen::Index h,
              RandomStream& rng) {
    GkState s;
    const Eigen::Index m = a.rows(), n = a.cols();
    s.p.setZero(n, h);
    s.q.setZero(m, h);
    s.b.setZero(h, h);
    s.norm_a = a.norm();
    const double tol = kBreakdownRel * s.norm_a;

    s.p.col(0) = p1;
    Eigen::VectorXd q1 = a * p1;
    double alpha = q1.norm();
    if (alpha > tol) {
        q1 /= alpha;
    } else {
        alpha = 0.0;
        q1 = random_orthogonal(s.q, 0, rng);
    }
    s.b(0, 0) = alpha;
    s.q.col(0) = q1;
    s.cols = 1;

    s.r = a.transpose() * s.q.col(0) - alpha * s.p.col(0);
    orthogonalize_against(s.p, 1, s.r);

    extend(s, a, h, rng);
    return s;
}

}  // namespace

Bidiagonalization lanczos_bidiagonalization(const Eigen::MatrixXd& a, const Eigen::VectorXd& p1,
                                            int steps, uint64_t seed) {
    const Eigen::Index m = a.rows(), n = a.cols();
    if (p1.size() != n) {
        throw std::invalid_argument("lanczos_bidiagonalization: p1 length must equal cols(A)");
    }
    if (std::abs(p1.norm() - 1.0) > 1e-8) {
        throw std::invalid_argument("lanczos_bidiagonalization: p1 must be a unit vector");
    }
    if (steps < 1 || steps > std::min(m, n)) {
        throw std::invalid_argument("lanczos_bidiagonalization: steps out of range [1, min(m,n)]");
    }
    RandomStream rng(seed);
    GkState s = start(a, p1, steps, rng);
    return Bidiagonalization{std::move(s.p), std::move(s.q), std::move(s.b), std::move(s.r)};
}

namespace {

void record_factorization_health(const Eigen::MatrixXd& a, const GkState& s,
                                 AlbDiagnostics& diag) {
    const Eigen::Index h = s.cols;
    const double scale = std::max(s.norm_a, 1e-300);
    const double ap = (a * s.p.leftCols(h) - s.q.leftCols(h) * s.b.topLeftCorner(h, h)).norm();
    Eigen::MatrixXd atq = a.transpose() * s.q.leftCols(h) -
                          s.p.leftCols(h) * s.b.topLeftCorner(h, h).transpose();
    atq.col(h - 1) -= s.r;
    diag.max_ap_residual = std::max(diag.max_ap_residual, ap / scale);
    diag.max_atq_residual = std::max(diag.max_atq_residual, atq.norm() / scale);
}

}  // namespace

SingularTriplets alb(const Eigen::MatrixXd& a, int L, const BackendOptions& opts,
                     AlbDiagnostics* diagnostics) {
    const Eigen::Index m = a.rows(), n = a.cols();
    const Eigen::Index min_dim = std::min(m, n);
    if (L < 1 || L >= min_dim) {
        throw std::invalid_argument("alb: need 1 <= L < min(m,n)");
    }
    Eigen::Index h = opts.lanczos_steps > 0 ? opts.lanczos_steps : std::max(2 * L + 1, 20);
    h = std::min<Eigen::Index>(h, min_dim);
    if (h <= L) {
        throw std::invalid_argument("alb: lanczos_steps must exceed L");
    }
    const double tol = opts.resolve_tolerance(1e-8);
    const double eps = std::numeric_limits<double>::epsilon();

    RandomStream rng(opts.seed);
    Eigen::VectorXd p1(n);
    for (Eigen::Index i = 0; i < n; ++i) p1(i) = rng.gaussian();
    p1.normalize();

    GkState s = start(a, p1, h, rng);
    if (diagnostics) record_factorization_health(a, s, *diagnostics);

    double norm_a2 = 0.0;  // ||A||_2 estimate: largest singular value of B seen so far
    Eigen::MatrixXd bu, bv;
    Eigen::VectorXd sigma;

    SingularTriplets out;
    out.converged = false;
    for (int restart = 0; restart < std::max(1, opts.max_iterations); ++restart) {
        out.iterations = restart + 1;
        dense_svd(s.b, bu, sigma, bv);
        norm_a2 = std::max(norm_a2, sigma(0));

        const double beta = s.r.norm();
        bool all_ok = true;
        for (int l = 0; l < L; ++l) {
            if (beta * std::abs(bu(h - 1, l)) > tol * norm_a2) {
                all_ok = false;
                break;
            }
        }
        if (all_ok) {
            out.converged = true;
            break;
        }
        if (restart + 1 >= std::max(1, opts.max_iterations)) break;

        const bool use_harmonic = opts.harmonic && sigma(h - 1) / sigma(0) <= 1.0 / std::sqrt(eps);
        GkState next;
        next.p.setZero(n, h);
        next.q.setZero(m, h);
        next.b.setZero(h, h);
        next.norm_a = s.norm_a;

        if (!use_harmonic) {
            // Ritz restart: keep the L leading Ritz vectors plus the next
            // Lanczos direction p_{h+1} = r/beta.
            if (beta <= kBreakdownRel * s.norm_a) {
                // residual vanished: factorization is exact, triplets are converged
                out.converged = true;
                break;
            }
            const Eigen::VectorXd p_next = s.r / beta;
            next.p.leftCols(L) = s.p * bv.leftCols(L);
            next.p.col(L) = p_next;
            next.q.leftCols(L) = s.q * bu.leftCols(L);
            for (int l = 0; l < L; ++l) next.b(l, l) = sigma(l);

            Eigen::VectorXd w = a * p_next;
            for (int l = 0; l < L; ++l) next.b(l, L) = beta * bu(h - 1, l);
            Eigen::VectorXd q_new = w;
            double alpha = orthogonalize_against(next.q, L, q_new);
            if (alpha > kBreakdownRel * s.norm_a) {
                q_new /= alpha;
            } else {
                alpha = 0.0;
                q_new = random_orthogonal(next.q, L, rng);
            }
            next.b(L, L) = alpha;
            next.q.col(L) = q_new;
            next.cols = L + 1;
        } else {
            // Harmonic restart: smallest triplets of the rectangular
            // [B | beta e_h], mapped through the QR factorization of the
            // shifted block.
            if (sigma(h - 1) <= kBreakdownRel * norm_a2) {
                throw std::runtime_error("alb: harmonic restart needs nonsingular B");
            }
            Eigen::MatrixXd b_rect(h, h + 1);
            b_rect.leftCols(h) = s.b;
            b_rect.col(h).setZero();
            b_rect(h - 1, h) = beta;

            Eigen::MatrixXd ur, vr;
            Eigen::VectorXd sr;
            dense_svd(b_rect, ur, sr, vr);
            // smallest L triplets of the h x (h+1) block
            Eigen::MatrixXd u_small(h, L);
            Eigen::VectorXd s_small(L);
            for (int l = 0; l < L; ++l) {
                u_small.col(l) = ur.col(h - 1 - l);
                s_small(l) = sr(h - 1 - l);
            }

            Eigen::PartialPivLU<Eigen::MatrixXd> blu(s.b);
            Eigen::MatrixXd k(h + 1, L + 1);
            k.topLeftCorner(h, L) = blu.solve(u_small * s_small.asDiagonal());
            k.topRightCorner(h, 1) = blu.solve(Eigen::VectorXd::Unit(h, h - 1)) * (-beta);
            k.bottomLeftCorner(1, L).setZero();
            k(h, L) = 1.0;

            MgsResult qr = mgs_qr(k);
            if (qr.rank < L + 1) {
                throw std::runtime_error("alb: harmonic QR factor is numerically singular");
            }

            Eigen::MatrixXd p_ext(n, h + 1);
            p_ext.leftCols(h) = s.p;
            p_ext.col(h) = (beta > kBreakdownRel * s.norm_a) ? Eigen::VectorXd(s.r / beta)
                                                             : random_orthogonal(s.p, h, rng);
            next.p.leftCols(L + 1) = p_ext * qr.q;
            next.q.leftCols(L) = s.q * u_small;

            // A P_{h+1} K has last column A p_{h+1} - beta q_h
            const Eigen::VectorXd ap = a * p_ext.col(h);
            Eigen::VectorXd gamma(L);
            for (int l = 0; l < L; ++l) {
                gamma(l) = -beta * next.q.col(l).dot(s.q.col(h - 1)) + next.q.col(l).dot(ap);
            }
            Eigen::VectorXd q_new = ap - beta * s.q.col(h - 1);
            double alpha = orthogonalize_against(next.q, L, q_new);
            if (alpha > kBreakdownRel * s.norm_a) {
                q_new /= alpha;
            } else {
                alpha = 0.0;
                q_new = random_orthogonal(next.q, L, rng);
            }
            next.q.col(L) = q_new;

            Eigen::MatrixXd small = Eigen::MatrixXd::Zero(L + 1, L + 1);
            small.topLeftCorner(L, L) = s_small.asDiagonal();
            small.topRightCorner(L, 1) = gamma;
            small(L, L) = alpha;
            // B_hat = small * R'^{-1}
            next.b.topLeftCorner(L + 1, L + 1) =
                qr.r.transpose().triangularView<Eigen::Lower>().solve(small.transpose()).transpose();
            next.cols = L + 1;
        }

        // standing residual of the (L+1)-column factorization
        next.r = a.transpose() * next.q.col(L) - next.p.leftCols(L + 1) *
                     next.b.row(L).head(L + 1).transpose();
        orthogonalize_against(next.p, L + 1, next.r);

        s = std::move(next);
        extend(s, a, h, rng);
        if (diagnostics) {
            ++diagnostics->restarts;
            record_factorization_health(a, s, *diagnostics);
        }
    }

    dense_svd(s.b, bu, sigma, bv);
    out.values = sigma.head(L);
    out.left_vectors = s.q * bu.leftCols(L);
    out.right_vectors = s.p * bv.leftCols(L);
    finalize_triplets(a, out);
    return out;
}

}  // namespace ggd::lowrank
