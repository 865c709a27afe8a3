#pragma once

#include <Eigen/Dense>

#include "hbvm/polybasis.hpp"

namespace hbvm {

/// Butcher tableau of HBVM(k,s) on the k Gauss-Legendre nodes, kept together
/// with the Legendre-basis factors it is assembled from:
///
///     A = Ps1 * Xhat * Ps^T * Omega
///
/// Ps(i,j) = P_j(c_i) for j < s, Ps1 the same with s+1 columns, Omega = diag(b).
/// For k == s this is the s-stage Gauss-Legendre collocation method.
struct HbvmTableau {
    int k = 0;
    int s = 0;
    QuadratureRule rule;
    Eigen::VectorXd b;
    Eigen::VectorXd c;
    Eigen::MatrixXd A;      // k x k
    Eigen::MatrixXd Ps;     // k x s
    Eigen::MatrixXd Ps1;    // k x (s+1)
    Eigen::MatrixXd Xhat;   // (s+1) x s
    Eigen::MatrixXd Omega;  // k x k, diagonal

    // Derived maps used by the stage solvers.
    Eigen::MatrixXd stage_map;       // Ps1 * Xhat, k x s: stages from coefficients
    Eigen::MatrixXd projection_map;  // Ps^T * Omega, s x k: coefficients from stage slopes

    /// Leading s x s block of Xhat.
    Eigen::MatrixXd Xs() const { return Xhat.topRows(s); }
};

/// (s+1) x s matrix: 1/2 in the corner, xi_1..xi_s below the diagonal,
/// -xi_1..-xi_{s-1} above it.
Eigen::MatrixXd build_Xhat(int s);

/// Closed-form determinant of the leading s x s block of build_Xhat(s).
double det_Xs(int s);

/// Throws std::invalid_argument unless k >= s >= 1.
HbvmTableau build_tableau(int k, int s);

}  // namespace hbvm
