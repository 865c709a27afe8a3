#include "hbvm/tableau.hpp"

#include <stdexcept>
#include <string>

namespace hbvm {

Eigen::MatrixXd build_Xhat(int s) {
    if (s < 1) throw std::invalid_argument("build_Xhat: s must be >= 1");
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(s + 1, s);
    X(0, 0) = 0.5;
    for (int i = 1; i <= s; ++i) {
        X(i, i - 1) = xi(i);
        if (i < s) X(i - 1, i) = -xi(i);
    }
    return X;
}

double det_Xs(int s) {
    if (s < 1) throw std::invalid_argument("det_Xs: s must be >= 1");
    double det = (s % 2 == 0) ? 1.0 : 0.5;
    const int first = (s % 2 == 0) ? 1 : 2;
    for (int i = 1; i <= s / 2; ++i) {
        const double x = xi(2 * i - 2 + first);
        det *= x * x;
    }
    return det;
}

HbvmTableau build_tableau(int k, int s) {
    if (s < 1 || k < s) {
        throw std::invalid_argument("build_tableau: need k >= s >= 1, got k = " + std::to_string(k) +
                                    ", s = " + std::to_string(s));
    }
    HbvmTableau t;
    t.k = k;
    t.s = s;
    t.rule = gauss_rule(k);
    t.b = Eigen::Map<const Eigen::VectorXd>(t.rule.weights.data(), k);
    t.c = Eigen::Map<const Eigen::VectorXd>(t.rule.nodes.data(), k);

    t.Ps1.resize(k, s + 1);
    for (int i = 0; i < k; ++i) {
        const auto p = legendre_values(s, t.c(i));
        for (int j = 0; j <= s; ++j) t.Ps1(i, j) = p[j];
    }
    t.Ps = t.Ps1.leftCols(s);
    t.Xhat = build_Xhat(s);
    t.Omega = t.b.asDiagonal();

    t.stage_map = t.Ps1 * t.Xhat;
    t.projection_map = t.Ps.transpose() * t.Omega;
    t.A = t.stage_map * t.projection_map;
    return t;
}

}  // namespace hbvm
