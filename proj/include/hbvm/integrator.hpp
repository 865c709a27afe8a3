#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hbvm/hamiltonian.hpp"
#include "hbvm/nlsolve.hpp"
#include "hbvm/splitting.hpp"
#include "hbvm/tableau.hpp"

namespace hbvm {

struct RunConfig {
    int k = 2;
    int s = 2;
    double h = 0.1;
    double t_end = 1.0;
    SolveOptions options;
    /// Keep every n-th state in the trajectory; statistics always use every step.
    int record_every = 1;
};

struct RunStats {
    std::int64_t steps = 0;
    std::int64_t total_outer_iterations = 0;
    std::int64_t total_inner_iterations = 0;
    std::int64_t gradient_evaluations = 0;
    std::int64_t hessian_evaluations = 0;
    std::int64_t factorizations = 0;
    /// max_n |H(y_n) - H(y_0)|
    double max_hamiltonian_error = 0.0;
    double initial_energy = 0.0;
    std::optional<double> solution_error;
    bool all_converged = true;
    /// Time at the end of the step that failed (solver or divergence).
    std::optional<double> failure_time;

    /// max_hamiltonian_error / |H(y_0)|, or the absolute value when H(y_0) = 0.
    double relative_hamiltonian_error() const {
        return initial_energy == 0.0 ? max_hamiltonian_error : max_hamiltonian_error / std::abs(initial_energy);
    }
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> states;
};

struct RunResult {
    Trajectory trajectory;
    RunStats stats;
};

/// Number of constant steps covering [0, t_end]: ceil(t_end / h), with
/// ratios within 1e-9 of an integer rounded to it.
std::int64_t step_count(double h, double t_end);

/// One HBVM(k,s) step at a time with a fixed solver configuration.
class HbvmStepper {
public:
    struct Step {
        Eigen::VectorXd y1;
        Eigen::VectorXd increment;  // h gamma_0
        SolveResult solve;
    };

    /// Throws std::invalid_argument for k < s, or for the splitting solver with s > 6.
    HbvmStepper(const HamiltonianSystem& system, int k, int s, SolveOptions options);

    Step step(const Eigen::VectorXd& y0, double h) const;

    const HbvmTableau& tableau() const { return tableau_; }
    const SolveOptions& options() const { return options_; }

private:
    const HamiltonianSystem* system_;
    HbvmTableau tableau_;
    std::optional<SplittingData> splitting_;
    SolveOptions options_;
};

/// Constant-stepsize integration over [0, t_end]. A step whose solver does
/// not converge ends the run with all_converged = false.
RunResult integrate(const HamiltonianSystem& system, const RunConfig& config);

/// max over the trajectory's times of |y - y_ref| / (1 + |y_ref|), Euclidean
/// norms. Every time of `trajectory` must appear in `reference`; throws
/// std::invalid_argument otherwise.
double solution_error(const Trajectory& trajectory, const Trajectory& reference);

struct OrderSample {
    double h = 0.0;
    double error = 0.0;
};

/// Global error at t_end for each stepsize. Without `exact`, the reference is
/// the same method run at min(h_list) / 16.
std::vector<OrderSample> order_study(const HamiltonianSystem& system, int k, int s, std::span<const double> h_list,
                                     double t_end, const std::function<Eigen::VectorXd(double)>& exact = {},
                                     const SolveOptions& options = {});

/// error[i] / error[i+1].
std::vector<double> order_ratios(std::span<const OrderSample> samples);

/// Coefficients of the 9-stage symmetric composition of order 6: the triple
/// jump applied twice (orders 2 -> 4 -> 6).
std::span<const double> composition6_coefficients();

/// Explicit order-6 composition of the Stormer-Verlet map for separable H,
/// 18 gradient evaluations per step. A state norm above 1e10 (or a non-finite
/// state) marks the run diverged and ends it.
RunResult composition6_stormer_verlet(const HamiltonianSystem& system, double h, double t_end,
                                      int record_every = 1);

}  // namespace hbvm
