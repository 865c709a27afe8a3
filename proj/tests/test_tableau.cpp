#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hbvm/tableau.hpp"
#include "oracles.hpp"

using namespace hbvm;

TEST_CASE("HBVM(1,1) is the implicit midpoint rule") {
    const HbvmTableau t = build_tableau(1, 1);
    CHECK(t.A.rows() == 1);
    CHECK(std::abs(t.A(0, 0) - 0.5) < 1e-16);
    CHECK(std::abs(t.b(0) - 1.0) < 1e-16);
    CHECK(std::abs(t.c(0) - 0.5) < 1e-16);
}

TEST_CASE("HBVM(2,2) is the 2-stage Gauss method") {
    const HbvmTableau t = build_tableau(2, 2);
    const double r = std::sqrt(3.0) / 6.0;
    Eigen::Matrix2d A;
    A << 0.25, 0.25 - r, 0.25 + r, 0.25;
    CHECK((t.A - A).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("row sums equal the abscissae") {
    for (int s = 1; s <= 6; ++s) {
        for (int k = s; k <= s + 6; ++k) {
            CAPTURE(k);
            CAPTURE(s);
            const HbvmTableau t = build_tableau(k, s);
            REQUIRE(t.A.rows() == k);
            REQUIRE(t.A.cols() == k);
            CHECK((t.A.rowwise().sum() - t.c).cwiseAbs().maxCoeff() < 1e-14);
            CHECK(std::abs(t.b.sum() - 1.0) < 1e-14);
        }
    }
}

TEST_CASE("Gauss collocation equivalence when k == s") {
    for (int s = 1; s <= 6; ++s) {
        CAPTURE(s);
        const HbvmTableau t = build_tableau(s, s);
        const std::vector<double> c(t.c.data(), t.c.data() + s);
        CHECK((t.A - oracle::collocation_matrix(c)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("simplifying conditions and rank") {
    for (auto [k, s] : {std::pair{4, 2}, {6, 3}, {10, 5}, {8, 2}}) {
        CAPTURE(k);
        CAPTURE(s);
        const HbvmTableau t = build_tableau(k, s);
        // C(s): A c^{p-1} = c^p / p
        for (int p = 1; p <= s; ++p) {
            const Eigen::VectorXd lhs = t.A * t.c.array().pow(p - 1).matrix();
            const Eigen::VectorXd rhs = t.c.array().pow(p) / p;
            CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
        }
        // quadrature order 2k
        for (int p = 1; p <= 2 * k; ++p) CHECK(std::abs(t.b.dot(t.c.array().pow(p - 1).matrix()) - 1.0 / p) < 1e-13);
        // A has rank s
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(t.A);
        const Eigen::VectorXd sv = svd.singularValues();
        CHECK(sv(s - 1) > 1e-3);
        if (k > s) CHECK(sv(s) < 1e-13);
    }
}

TEST_CASE("Xhat structure and determinant") {
    for (int s = 1; s <= 10; ++s) {
        CAPTURE(s);
        const Eigen::MatrixXd X = build_Xhat(s);
        REQUIRE(X.rows() == s + 1);
        REQUIRE(X.cols() == s);
        CHECK(X(0, 0) == 0.5);
        for (int i = 1; i <= s; ++i) CHECK(X(i, i - 1) == xi(i));
        for (int i = 1; i < s; ++i) CHECK(X(i - 1, i) == -xi(i));
        const double det = X.topRows(s).determinant();
        CHECK(std::abs(det_Xs(s) - det) <= 1e-13 * std::abs(det));
    }
}

TEST_CASE("factor matrices") {
    const HbvmTableau t = build_tableau(6, 3);
    CHECK((t.stage_map - t.Ps1 * t.Xhat).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((t.projection_map - t.Ps.transpose() * t.Omega).cwiseAbs().maxCoeff() < 1e-15);
    // Ps^T Omega Ps = I by exactness of the quadrature
    CHECK(((t.Ps.transpose() * t.Omega * t.Ps) - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((t.Xs() - build_Xhat(3).topRows(3)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("invalid arguments") {
    CHECK_THROWS_AS(build_tableau(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_tableau(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_Xhat(0), std::invalid_argument);
}
