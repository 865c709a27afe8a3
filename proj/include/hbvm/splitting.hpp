#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace hbvm {

/// Change of unknowns for the stage equations and the triangular factors of
/// the transformed matrix.
///
/// The auxiliary abscissae chat define Phat(i,j) = P_j(chat_i). The transformed
/// matrix Ahat = Phat * Xs * Phat^{-1} depends on s only, and for the shipped
/// abscissae it factors as Ahat = L * U with U unit upper triangular and every
/// diagonal entry of L equal to d = det(Xs)^{1/s}. That common diagonal is what
/// lets the inner iteration reuse a single 2m x 2m factorization.
struct SplittingData {
    int s = 0;
    std::vector<double> chat;
    Eigen::MatrixXd Phat;
    Eigen::MatrixXd Phat_inv;
    Eigen::MatrixXd Ahat;
    Eigen::MatrixXd L;
    Eigen::MatrixXd U;
    double d = 0.0;
};

struct TriangularFactors {
    Eigen::MatrixXd L;  // lower triangular
    Eigen::MatrixXd U;  // unit upper triangular
};

/// Common diagonal entry of L, computed from the closed form det(Xs)^{1/s}.
double d_s(int s);

/// Tabulated auxiliary abscissae for 2 <= s <= 6, in their published order.
std::vector<double> auxiliary_abscissae(int s);

/// Ahat = Phat * Xs * Phat^{-1} for arbitrary distinct abscissae.
Eigen::MatrixXd transformed_matrix(std::span<const double> chat);

/// Crout factorization without pivoting, unit diagonal on U.
/// Throws std::domain_error on a pivot below 1e-13 * ||Ahat||, or when some
/// L(i,i) deviates from d by more than 1e-9.
TriangularFactors crout_lu_constant_diag(const Eigen::MatrixXd& Ahat, double d);

/// Splitting for 2 <= s <= 6 from the tabulated abscissae. s == 1 yields the
/// degenerate data chat = {1}, Ahat = L = [1/2], U = [1].
SplittingData build_splitting(int s);

/// |det(Ahat_{l+1}) - d det(Ahat_l)| for the leading principal blocks, l = 1..s-1.
std::vector<double> condition_residuals(const Eigen::MatrixXd& Ahat, double d);

std::vector<double> verify_conditions(const SplittingData& data);

}  // namespace hbvm
