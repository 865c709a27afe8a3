#include "hbvm/nlsolve.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hbvm {

namespace {

constexpr double kSingularRcond = 1e-15;

double inf_norm(const Eigen::MatrixXd& M) {
    return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff();
}

enum class Verdict { iterate, converged, failed };

// Converged when the correction passes tol, or when the smallest correction
// seen is already below the rounding floor and has not improved for
// stagnation_window consecutive iterations.
class Monitor {
public:
    explicit Monitor(const SolveOptions& opts) : opts_(&opts) {}

    Verdict judge(double correction, const Eigen::MatrixXd& gamma) {
        if (!std::isfinite(correction)) return Verdict::failed;
        const double scale = 1.0 + inf_norm(gamma);
        if (correction <= opts_->tol * scale) return Verdict::converged;
        if (correction < best_) {
            best_ = correction;
            best_scale_ = scale;
            stalled_ = 0;
            return Verdict::iterate;
        }
        ++stalled_;
        if (stalled_ >= opts_->stagnation_window && best_ <= opts_->stagnation_tol * best_scale_) return Verdict::converged;
        return Verdict::iterate;
    }

private:
    const SolveOptions* opts_;
    double best_ = std::numeric_limits<double>::infinity();
    // scale at the best iterate; a diverging gamma must not widen the floor
    double best_scale_ = 1.0;
    int stalled_ = 0;
};

int fixed_point_cap(const SolveOptions& opts) {
    return opts.max_fixed_point > 0 ? opts.max_fixed_point : 10 * opts.max_outer;
}

void check_options(const SolveOptions& opts) {
    if (!(opts.tol > 0.0)) throw std::invalid_argument("SolveOptions: tol must be positive");
    if (opts.mu < 1) throw std::invalid_argument("SolveOptions: mu must be >= 1");
    if (opts.max_outer < 1) throw std::invalid_argument("SolveOptions: max_outer must be >= 1");
    if (opts.stagnation_tol < 0.0) throw std::invalid_argument("SolveOptions: stagnation_tol must be >= 0");
    if (opts.stagnation_window < 1) throw std::invalid_argument("SolveOptions: stagnation_window must be >= 1");
}

// Slopes J grad H at every stage, combined into coefficients: Ps^T Omega (x) J.
Eigen::MatrixXd project_slopes(const StageProblem& p, const Eigen::MatrixXd& stages) {
    const HamiltonianSystem& sys = p.system();
    const int k = p.tableau().k;
    Eigen::MatrixXd slopes(p.dimension(), k);
    for (int i = 0; i < k; ++i) slopes.col(i) = vector_field(sys, stages.col(i));
    return slopes * p.tableau().projection_map.transpose();
}

Eigen::MatrixXd J_times_hessian(const StageProblem& p) {
    const HamiltonianSystem& sys = p.system();
    return sys.J().apply(sys.hessian(p.y0()));
}

}  // namespace

StageProblem::StageProblem(const HbvmTableau& tableau, const HamiltonianSystem& system, Eigen::VectorXd y0,
                           double h)
    : tableau_(&tableau), system_(&system), y0_(std::move(y0)), h_(h) {
    if (y0_.size() != system.dimension()) {
        throw std::invalid_argument("StageProblem: initial state does not match the system dimension");
    }
    if (h_ == 0.0 || !std::isfinite(h_)) throw std::invalid_argument("StageProblem: stepsize must be nonzero");
    if (tableau.stage_map.rows() != tableau.k || tableau.stage_map.cols() != tableau.s) {
        throw std::invalid_argument("StageProblem: inconsistent tableau");
    }
}

Eigen::MatrixXd stages_from_gamma(const StageProblem& p, const Eigen::MatrixXd& gamma) {
    Eigen::MatrixXd stages = p.h() * gamma * p.tableau().stage_map.transpose();
    stages.colwise() += p.y0();
    return stages;
}

Eigen::VectorXd step_update(const StageProblem& p, const Eigen::MatrixXd& gamma) {
    return p.y0() + p.h() * gamma.col(0);
}

Eigen::MatrixXd residual_F(const StageProblem& p, const Eigen::MatrixXd& gamma) {
    return gamma - project_slopes(p, stages_from_gamma(p, gamma));
}

StepMatrixFactorization::StepMatrixFactorization(double h, double d, const Eigen::MatrixXd& hess,
                                                 const SymplecticJ& J) {
    const Eigen::Index n = hess.rows();
    if (hess.cols() != n || n != 2 * J.m) throw std::invalid_argument("factor_step_matrix: bad Hessian size");
    matrix_ = Eigen::MatrixXd::Identity(n, n) - (h * d) * J.apply(hess);
    lu_.compute(matrix_);
    if (!(lu_.rcond() > kSingularRcond)) {
        throw std::domain_error("factor_step_matrix: matrix I - h d J Hess is numerically singular");
    }
}

StepMatrixFactorization factor_step_matrix(double h, double d, const Eigen::MatrixXd& hess0) {
    return StepMatrixFactorization(h, d, hess0, SymplecticJ{static_cast<int>(hess0.rows() / 2)});
}

SplittingInnerSolver::SplittingInnerSolver(const SplittingData& data, double h, const Eigen::MatrixXd& hess0,
                                           const SymplecticJ& J)
    : data_(&data),
      h_(h),
      jh0_(J.apply(hess0)),
      coupling_(data.L * (data.U - Eigen::MatrixXd::Identity(data.s, data.s))),
      factor_(h, data.d, hess0, J) {}

Eigen::MatrixXd SplittingInnerSolver::sweep(const Eigen::MatrixXd& eta, const Eigen::MatrixXd& delta) const {
    const int s = data_->s;
    const Eigen::MatrixXd& L = data_->L;
    Eigen::MatrixXd rhs = eta + h_ * (jh0_ * delta) * coupling_.transpose();
    Eigen::MatrixXd next(eta.rows(), s);
    Eigen::MatrixXd jh_next(eta.rows(), s);
    for (int i = 0; i < s; ++i) {
        Eigen::VectorXd b = rhs.col(i);
        for (int j = 0; j < i; ++j) b += (h_ * L(i, j)) * jh_next.col(j);
        next.col(i) = factor_.solve(b);
        jh_next.col(i) = jh0_ * next.col(i);
    }
    return next;
}

SolveResult fixed_point_solve(const StageProblem& p, const SolveOptions& opts) {
    check_options(opts);
    const int cap = fixed_point_cap(opts);
    const int k = p.tableau().k;
    SolveResult r;
    Monitor monitor(opts);
    r.gamma = Eigen::MatrixXd::Zero(p.dimension(), p.s());
    for (int it = 0; it < cap; ++it) {
        Eigen::MatrixXd next = project_slopes(p, stages_from_gamma(p, r.gamma));
        r.gradient_evaluations += k;
        ++r.outer_iterations;
        r.residual_norm = inf_norm(next - r.gamma);
        r.gamma = std::move(next);
        const Verdict v = monitor.judge(r.residual_norm, r.gamma);
        if (v == Verdict::iterate) continue;
        r.converged = v == Verdict::converged;
        break;
    }
    return r;
}

SolveResult simplified_newton_solve(const StageProblem& p, const SolveOptions& opts) {
    check_options(opts);
    const int s = p.s();
    const int n = p.dimension();
    const int k = p.tableau().k;
    const Eigen::MatrixXd jh0 = J_times_hessian(p);
    const Eigen::MatrixXd Xs = p.tableau().Xs();

    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n * s, n * s);
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
            if (Xs(i, j) != 0.0) M.block(i * n, j * n, n, n) -= (p.h() * Xs(i, j)) * jh0;
        }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
    if (!(lu.rcond() > kSingularRcond)) {
        throw std::domain_error("simplified_newton_solve: Newton matrix is numerically singular");
    }

    SolveResult r;
    Monitor monitor(opts);
    r.gamma = Eigen::MatrixXd::Zero(n, s);
    for (int it = 0; it < opts.max_outer; ++it) {
        const Eigen::MatrixXd F = residual_F(p, r.gamma);
        r.gradient_evaluations += k;
        const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(F.data(), F.size());
        const Eigen::VectorXd delta = lu.solve(rhs);
        r.gamma += Eigen::Map<const Eigen::MatrixXd>(delta.data(), n, s);
        ++r.outer_iterations;
        r.residual_norm = delta.cwiseAbs().maxCoeff();
        const Verdict v = monitor.judge(r.residual_norm, r.gamma);
        if (v == Verdict::iterate) continue;
        r.converged = v == Verdict::converged;
        break;
    }
    return r;
}

SolveResult splitting_solve(const StageProblem& p, const SplittingData& data, const SolveOptions& opts) {
    check_options(opts);
    if (data.s != p.s()) throw std::invalid_argument("splitting_solve: splitting built for a different s");
    const int n = p.dimension();
    const int s = p.s();
    const int k = p.tableau().k;
    const SplittingInnerSolver inner(data, p.h(), p.system().hessian(p.y0()), p.system().J());

    SolveResult r;
    Eigen::MatrixXd gamma_hat = Eigen::MatrixXd::Zero(n, s);
    Monitor monitor(opts);
    r.gamma = Eigen::MatrixXd::Zero(n, s);
    for (int it = 0; it < opts.max_outer; ++it) {
        const Eigen::MatrixXd eta = -residual_F(p, r.gamma) * data.Phat.transpose();
        r.gradient_evaluations += k;
        Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(n, s);
        for (int inner_it = 0; inner_it < opts.mu; ++inner_it) delta = inner.sweep(eta, delta);
        r.inner_iterations_total += opts.mu;
        ++r.outer_iterations;

        gamma_hat += delta;
        r.gamma = gamma_hat * data.Phat_inv.transpose();
        r.residual_norm = inf_norm(delta);
        const Verdict v = monitor.judge(r.residual_norm, gamma_hat);
        if (v == Verdict::iterate) continue;
        r.converged = v == Verdict::converged;
        break;
    }
    return r;
}

}  // namespace hbvm
