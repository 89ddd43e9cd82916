#include "ggd/lowrank/backend.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ggd/lowrank/dense.hpp"
#include "ggd/lowrank/lanczos.hpp"
#include "ggd/lowrank/mcla.hpp"
#include "ggd/lowrank/pime.hpp"
#include "ggd/lowrank/rsvd.hpp"

namespace ggd::lowrank {

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::exact: return "exact";
        case Backend::mcla: return "mcla";
        case Backend::alb: return "alb";
        case Backend::pime: return "pime";
        case Backend::rsvd: return "rsvd";
    }
    return "unknown";
}

Backend backend_from_name(const std::string& name) {
    if (name == "exact") return Backend::exact;
    if (name == "mcla") return Backend::mcla;
    if (name == "alb") return Backend::alb;
    if (name == "pime") return Backend::pime;
    if (name == "rsvd") return Backend::rsvd;
    throw std::invalid_argument("unknown backend '" + name +
                                "' (expected exact|mcla|alb|pime|rsvd)");
}

double BackendOptions::resolve_tolerance(double backend_default) const {
    if (!tolerance.has_value()) return backend_default;
    const double t = *tolerance;
    if (!(t > 0.0 && t < 1.0)) {
        throw std::invalid_argument("backend tolerance must lie in (0, 1)");
    }
    return t;
}

void finalize_triplets(const Eigen::MatrixXd& a, SingularTriplets& t) {
    const Eigen::Index L = t.values.size();

    std::vector<Eigen::Index> order(static_cast<size_t>(L));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return t.values(x) > t.values(y); });

    SingularTriplets sorted;
    sorted.values.resize(L);
    sorted.left_vectors.resize(t.left_vectors.rows(), L);
    sorted.right_vectors.resize(t.right_vectors.rows(), L);
    for (Eigen::Index l = 0; l < L; ++l) {
        const Eigen::Index idx = order[static_cast<size_t>(l)];
        sorted.values(l) = t.values(idx);
        sorted.left_vectors.col(l) = t.left_vectors.col(idx);
        sorted.right_vectors.col(l) = t.right_vectors.col(idx);
    }
    t.values = std::move(sorted.values);
    t.left_vectors = std::move(sorted.left_vectors);
    t.right_vectors = std::move(sorted.right_vectors);

    // sign convention: the largest-magnitude component of each right vector
    // is positive; the left vector flips with it so A v = sigma u survives
    for (Eigen::Index l = 0; l < L; ++l) {
        Eigen::Index imax = 0;
        t.right_vectors.col(l).cwiseAbs().maxCoeff(&imax);
        if (t.right_vectors(imax, l) < 0.0) {
            t.right_vectors.col(l) = -t.right_vectors.col(l);
            t.left_vectors.col(l) = -t.left_vectors.col(l);
        }
    }

    const Eigen::MatrixXd av = a * t.right_vectors;
    t.residuals.resize(L);
    for (Eigen::Index l = 0; l < L; ++l) {
        t.residuals(l) = (av.col(l) - t.values(l) * t.left_vectors.col(l)).norm();
    }
}

SingularTriplets compute_top_triplets(const Eigen::MatrixXd& a, int L, Backend backend,
                                      const BackendOptions& opts) {
    switch (backend) {
        case Backend::exact: return exact_symmetric_svd(a, L);
        case Backend::mcla: return mcla(a, L, opts);
        case Backend::alb: return alb(a, L, opts);
        case Backend::pime: return pime(a, L, opts);
        case Backend::rsvd: return rsvd(a, L, opts);
    }
    throw std::invalid_argument("compute_top_triplets: unknown backend");
}

}  // namespace ggd::lowrank
