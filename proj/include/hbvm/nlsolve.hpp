#pragma once

// Stage equations of HBVM(k,s) in the coefficient form
//
//     F(gamma) = gamma - (Ps^T Omega (x) J) grad H(e (x) y0 + h (Ps1 Xhat (x) I) gamma) = 0,
//
// whose block size is s whatever k is. The block vector gamma is stored as a
// 2m x s matrix: column j holds gamma_j. After convergence y1 = y0 + h gamma_0.

#include <Eigen/Dense>

#include "hbvm/hamiltonian.hpp"
#include "hbvm/splitting.hpp"
#include "hbvm/tableau.hpp"

namespace hbvm {

enum class SolverKind { fixed_point, simplified_newton, splitting };

/// Every solver stops when the correction satisfies
/// ||delta||_inf <= tol * (1 + ||gamma||_inf), or once the smallest correction
/// so far is below stagnation_tol * (1 + ||gamma||_inf) and has not improved
/// for stagnation_window iterations, i.e. the iteration sits at the rounding
/// floor.
struct SolveOptions {
    double tol = 1e-15;
    double stagnation_tol = 1e-8;
    int stagnation_window = 3;
    int max_outer = 100;
    /// Inner iterations per outer iteration of the splitting solver.
    int mu = 2;
    SolverKind solver = SolverKind::splitting;
    /// Fixed-point sweeps allowed; 0 means 10 * max_outer.
    int max_fixed_point = 0;
};

struct SolveResult {
    Eigen::MatrixXd gamma;
    int outer_iterations = 0;
    int inner_iterations_total = 0;
    int gradient_evaluations = 0;
    bool converged = false;
    /// Infinity norm of the last correction, the quantity the stopping rule tests.
    double residual_norm = 0.0;
};

/// One step's stage problem. Holds references: the tableau and system must
/// outlive it. h may be negative (backward steps); h == 0 is rejected.
class StageProblem {
public:
    StageProblem(const HbvmTableau& tableau, const HamiltonianSystem& system, Eigen::VectorXd y0, double h);

    const HbvmTableau& tableau() const { return *tableau_; }
    const HamiltonianSystem& system() const { return *system_; }
    const Eigen::VectorXd& y0() const { return y0_; }
    double h() const { return h_; }
    int s() const { return tableau_->s; }
    int dimension() const { return system_->dimension(); }

private:
    const HbvmTableau* tableau_;
    const HamiltonianSystem* system_;
    Eigen::VectorXd y0_;
    double h_;
};

/// 2m x k matrix of stages Y_i = y0 + h sum_j (Ps1 Xhat)_{ij} gamma_j.
Eigen::MatrixXd stages_from_gamma(const StageProblem& p, const Eigen::MatrixXd& gamma);

/// y0 + h gamma_0.
Eigen::VectorXd step_update(const StageProblem& p, const Eigen::MatrixXd& gamma);

/// F(gamma), same shape as gamma. Propagates the system's domain errors.
Eigen::MatrixXd residual_F(const StageProblem& p, const Eigen::MatrixXd& gamma);

/// LU factorization (partial pivoting) of I - h d J Hess, reused for every
/// diagonal block of the inner iteration.
class StepMatrixFactorization {
public:
    StepMatrixFactorization(double h, double d, const Eigen::MatrixXd& hess, const SymplecticJ& J);

    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const { return lu_.solve(rhs); }
    const Eigen::MatrixXd& matrix() const { return matrix_; }

private:
    Eigen::MatrixXd matrix_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

/// Throws std::domain_error when the matrix is numerically singular.
StepMatrixFactorization factor_step_matrix(double h, double d, const Eigen::MatrixXd& hess0);

/// Inner iteration of the splitting solver: one block forward substitution
///
///     [I - h L (x) JH0] delta_next = h L(U-I) (x) JH0 delta + eta,
///
/// with every diagonal block solved by the shared factorization.
class SplittingInnerSolver {
public:
    SplittingInnerSolver(const SplittingData& data, double h, const Eigen::MatrixXd& hess0, const SymplecticJ& J);

    Eigen::MatrixXd sweep(const Eigen::MatrixXd& eta, const Eigen::MatrixXd& delta) const;

private:
    const SplittingData* data_;
    double h_;
    Eigen::MatrixXd jh0_;
    Eigen::MatrixXd coupling_;  // L (U - I)
    StepMatrixFactorization factor_;
};

SolveResult fixed_point_solve(const StageProblem& p, const SolveOptions& opts);
SolveResult simplified_newton_solve(const StageProblem& p, const SolveOptions& opts);
SolveResult splitting_solve(const StageProblem& p, const SplittingData& data, const SolveOptions& opts);

}  // namespace hbvm
