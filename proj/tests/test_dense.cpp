#include <doctest.h>

#include <Eigen/Dense>

#include "ggd/lowrank/dense.hpp"
#include "support/test_matrices.hpp"

using namespace ggd::lowrank;

TEST_CASE("exact_symmetric_svd: identity matrix has unit spectrum") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(5, 5);
    SingularTriplets t = exact_symmetric_svd(a, 3);
    REQUIRE(t.rank() == 3);
    for (int l = 0; l < 3; ++l) CHECK(t.values(l) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((t.right_vectors.transpose() * t.right_vectors - Eigen::MatrixXd::Identity(3, 3))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
}

TEST_CASE("exact_symmetric_svd: diagonal with negative eigenvalue flips left vector") {
    Eigen::MatrixXd a = Eigen::Vector3d(4.0, -3.0, 1.0).asDiagonal();
    SingularTriplets t = exact_symmetric_svd(a, 3);
    CHECK(t.values(0) == doctest::Approx(4.0));
    CHECK(t.values(1) == doctest::Approx(3.0));
    CHECK(t.values(2) == doctest::Approx(1.0));
    // second triplet belongs to lambda = -3: u = -v
    CHECK(std::abs(t.right_vectors(1, 1)) == doctest::Approx(1.0));
    CHECK(t.left_vectors.col(1).dot(t.right_vectors.col(1)) == doctest::Approx(-1.0));
    // triplet relation A v = sigma u holds for the flipped pair
    CHECK((a * t.right_vectors.col(1) - t.values(1) * t.left_vectors.col(1)).norm() < 1e-12);
}

TEST_CASE("exact_symmetric_svd: full reconstruction of a random symmetric matrix") {
    const Eigen::Index n = 20;
    Eigen::MatrixXd a = ggd_test::random_symmetric(n, 42);
    SingularTriplets t = exact_symmetric_svd(a, static_cast<int>(n));
    Eigen::MatrixXd rec = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index l = 0; l < n; ++l) {
        rec += t.values(l) * t.left_vectors.col(l) * t.right_vectors.col(l).transpose();
    }
    CHECK((rec - a).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((t.right_vectors.transpose() * t.right_vectors - Eigen::MatrixXd::Identity(n, n))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    CHECK(t.residuals.maxCoeff() < 1e-10 * a.norm());
    for (Eigen::Index l = 1; l < n; ++l) CHECK(t.values(l) <= t.values(l - 1) + 1e-14);
}

TEST_CASE("exact_symmetric_svd: recovers a prescribed spectrum") {
    Eigen::VectorXd lambda(6);
    lambda << 10.0, -8.0, 5.0, -2.0, 1.0, 0.5;
    Eigen::MatrixXd a = ggd_test::symmetric_with_spectrum(lambda, 7);
    SingularTriplets t = exact_symmetric_svd(a, 6);
    Eigen::VectorXd expected(6);
    expected << 10.0, 8.0, 5.0, 2.0, 1.0, 0.5;
    for (int l = 0; l < 6; ++l) {
        CHECK(t.values(l) == doctest::Approx(expected(l)).epsilon(1e-10));
    }
}

TEST_CASE("exact_symmetric_svd: rejects non-symmetric input and bad L") {
    Eigen::MatrixXd a(2, 2);
    a << 1.0, 2.0, 3.0, 4.0;
    CHECK_THROWS_AS(exact_symmetric_svd(a, 1), std::invalid_argument);
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(3, 3);
    CHECK_THROWS_AS(exact_symmetric_svd(s, 0), std::invalid_argument);
    CHECK_THROWS_AS(exact_symmetric_svd(s, 4), std::invalid_argument);
}

TEST_CASE("symmetric_eigen: ascending eigenvalues, orthonormal vectors") {
    Eigen::MatrixXd a = ggd_test::random_symmetric(15, 3);
    Eigen::VectorXd evals;
    Eigen::MatrixXd evecs;
    symmetric_eigen(a, evals, evecs);
    for (Eigen::Index i = 1; i < evals.size(); ++i) CHECK(evals(i) >= evals(i - 1));
    CHECK((a * evecs - evecs * evals.asDiagonal()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("dense_svd: reconstructs rectangular matrices") {
    for (auto [rows, cols] : {std::pair<int, int>{12, 7}, {7, 12}, {9, 9}}) {
        Eigen::MatrixXd a = ggd_test::random_matrix(rows, cols, 11 + rows);
        Eigen::MatrixXd u, v;
        Eigen::VectorXd s;
        dense_svd(a, u, s, v);
        const Eigen::Index r = std::min(rows, cols);
        REQUIRE(s.size() == r);
        CHECK((u.transpose() * u - Eigen::MatrixXd::Identity(r, r)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((v.transpose() * v - Eigen::MatrixXd::Identity(r, r)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((u * s.asDiagonal() * v.transpose() - a).cwiseAbs().maxCoeff() < 1e-9);
        for (Eigen::Index i = 1; i < r; ++i) CHECK(s(i) <= s(i - 1) + 1e-14);
    }
}

TEST_CASE("dense_svd: exact on a rank-deficient matrix") {
    Eigen::MatrixXd x = ggd_test::random_matrix(10, 3, 5);
    Eigen::MatrixXd y = ggd_test::random_matrix(8, 3, 6);
    Eigen::MatrixXd a = x * y.transpose();  // rank 3
    Eigen::MatrixXd u, v;
    Eigen::VectorXd s;
    dense_svd(a, u, s, v);
    CHECK((u * s.asDiagonal() * v.transpose() - a).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(s(3) < 1e-10 * s(0));
}

TEST_CASE("mgs_qr: orthonormal factor and rank detection") {
    Eigen::MatrixXd a = ggd_test::random_matrix(20, 6, 9);
    MgsResult qr = mgs_qr(a);
    CHECK(qr.rank == 6);
    CHECK((qr.q.transpose() * qr.q - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK((qr.q * qr.r - a).cwiseAbs().maxCoeff() < 1e-12);

    a.col(3) = 2.0 * a.col(1) - a.col(0);  // dependent column
    qr = mgs_qr(a);
    CHECK(qr.rank == 5);
    CHECK(qr.r(3, 3) == 0.0);
}
