#include "hbvm/splitting.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "hbvm/polybasis.hpp"
#include "hbvm/tableau.hpp"

namespace hbvm {

namespace {

constexpr double kPivotTolerance = 1e-13;
constexpr double kDiagonalTolerance = 1e-9;

// Abscissae that make the leading principal minors of Ahat satisfy
// det(Ahat_{l+1}) = d_s det(Ahat_l); the last entry of each row is the free
// parameter tuned for a small maximum amplification factor.
const std::vector<std::vector<double>> kAuxiliaryAbscissae = {
    {0.26036297108184508789101036587842555, 1.0},
    {0.15636399930006671060146617869938122, 0.45431868644630821020177903150137523, 0.948},
    {0.11004843257056123468614502691988075, 0.31588689139705398683980065724981436,
     0.53114668286639796587351917750274705, 0.884},
    {0.084221784434612320884185541600934218, 0.248618520588562018051811779022293944,
     0.413725268815220956415498643302145284, 0.587098748971877116030882436751962384, 0.9338},
    {0.20985774196263657630356114041757724, 0.36816786358152563671526302698797908,
     0.39607328223635472401921951140390213, 0.62783521091780460858476326939502046,
     0.04580307227138364391540767310611717, 0.94225},
};

Eigen::MatrixXd basis_at(std::span<const double> points) {
    const int s = static_cast<int>(points.size());
    Eigen::MatrixXd P(s, s);
    for (int i = 0; i < s; ++i) {
        const auto values = legendre_values(s - 1, points[i]);
        for (int j = 0; j < s; ++j) P(i, j) = values[j];
    }
    return P;
}

}  // namespace

double d_s(int s) {
    if (s < 1) throw std::invalid_argument("d_s: s must be >= 1");
    return std::pow(det_Xs(s), 1.0 / s);
}

std::vector<double> auxiliary_abscissae(int s) {
    if (s < 2 || s > 6) {
        throw std::invalid_argument("auxiliary_abscissae: tabulated for 2 <= s <= 6 only, got " +
                                    std::to_string(s));
    }
    return kAuxiliaryAbscissae[s - 2];
}

Eigen::MatrixXd transformed_matrix(std::span<const double> chat) {
    const int s = static_cast<int>(chat.size());
    if (s < 1) throw std::invalid_argument("transformed_matrix: empty abscissae");
    const Eigen::MatrixXd P = basis_at(chat);
    const Eigen::MatrixXd Xs = build_Xhat(s).topRows(s);
    // Ahat * P = P * Xs  <=>  P^T * Ahat^T = (P * Xs)^T
    Eigen::FullPivLU<Eigen::MatrixXd> lu(P.transpose());
    if (!lu.isInvertible()) throw std::domain_error("transformed_matrix: Phat is singular");
    return lu.solve((P * Xs).transpose()).transpose();
}

TriangularFactors crout_lu_constant_diag(const Eigen::MatrixXd& Ahat, double d) {
    const Eigen::Index s = Ahat.rows();
    if (Ahat.cols() != s) throw std::invalid_argument("crout_lu_constant_diag: matrix must be square");
    const double scale = Ahat.cwiseAbs().maxCoeff();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(s, s);
    Eigen::MatrixXd U = Eigen::MatrixXd::Identity(s, s);
    for (Eigen::Index j = 0; j < s; ++j) {
        for (Eigen::Index i = j; i < s; ++i) {
            L(i, j) = Ahat(i, j) - L.row(i).head(j).dot(U.col(j).head(j));
        }
        if (std::abs(L(j, j)) < kPivotTolerance * scale) {
            throw std::domain_error("crout_lu_constant_diag: vanishing pivot at position " +
                                    std::to_string(j));
        }
        for (Eigen::Index i = j + 1; i < s; ++i) {
            U(j, i) = (Ahat(j, i) - L.row(j).head(j).dot(U.col(i).head(j))) / L(j, j);
        }
    }
    for (Eigen::Index i = 0; i < s; ++i) {
        if (std::abs(L(i, i) - d) > kDiagonalTolerance) {
            throw std::domain_error("crout_lu_constant_diag: L(" + std::to_string(i) + "," +
                                    std::to_string(i) + ") deviates from the common diagonal");
        }
    }
    return {std::move(L), std::move(U)};
}

SplittingData build_splitting(int s) {
    SplittingData data;
    data.s = s;
    data.d = d_s(s);
    if (s == 1) {
        data.chat = {1.0};
        data.Phat = Eigen::MatrixXd::Ones(1, 1);
        data.Phat_inv = Eigen::MatrixXd::Ones(1, 1);
        data.Ahat = Eigen::MatrixXd::Constant(1, 1, 0.5);
        data.L = data.Ahat;
        data.U = Eigen::MatrixXd::Ones(1, 1);
        return data;
    }
    data.chat = auxiliary_abscissae(s);
    if (std::set<double>(data.chat.begin(), data.chat.end()).size() != data.chat.size()) {
        throw std::domain_error("build_splitting: auxiliary abscissae must be distinct");
    }
    data.Phat = basis_at(data.chat);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(data.Phat);
    data.Phat_inv = lu.solve(Eigen::MatrixXd::Identity(s, s));
    data.Ahat = transformed_matrix(data.chat);
    auto [L, U] = crout_lu_constant_diag(data.Ahat, data.d);
    data.L = std::move(L);
    data.U = std::move(U);
    return data;
}

std::vector<double> condition_residuals(const Eigen::MatrixXd& Ahat, double d) {
    const Eigen::Index s = Ahat.rows();
    std::vector<double> residuals;
    double det_prev = Ahat(0, 0);
    for (Eigen::Index l = 1; l < s; ++l) {
        const double det_next = Ahat.topLeftCorner(l + 1, l + 1).determinant();
        residuals.push_back(std::abs(det_next - d * det_prev));
        det_prev = det_next;
    }
    return residuals;
}

std::vector<double> verify_conditions(const SplittingData& data) {
    return condition_residuals(data.Ahat, data.d);
}

}  // namespace hbvm
