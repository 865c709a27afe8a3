#include "hbvm/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hbvm {

namespace {

bool record_step(std::int64_t n, std::int64_t total, int every) {
    return n % every == 0 || n == total;
}

}  // namespace

std::int64_t step_count(double h, double t_end) {
    if (!(h > 0.0) || !(t_end > 0.0)) throw std::invalid_argument("step_count: h and t_end must be positive");
    const double ratio = t_end / h;
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) <= 1e-9 * ratio) return static_cast<std::int64_t>(nearest);
    return static_cast<std::int64_t>(std::ceil(ratio));
}

HbvmStepper::HbvmStepper(const HamiltonianSystem& system, int k, int s, SolveOptions options)
    : system_(&system), tableau_(build_tableau(k, s)), options_(options) {
    if (options_.solver == SolverKind::splitting) {
        if (s > 6) throw std::invalid_argument("HbvmStepper: the splitting solver supports s <= 6");
        splitting_ = build_splitting(s);
    }
}

HbvmStepper::Step HbvmStepper::step(const Eigen::VectorXd& y0, double h) const {
    const StageProblem problem(tableau_, *system_, y0, h);
    Step out;
    switch (options_.solver) {
        case SolverKind::fixed_point:
            out.solve = fixed_point_solve(problem, options_);
            break;
        case SolverKind::simplified_newton:
            out.solve = simplified_newton_solve(problem, options_);
            break;
        case SolverKind::splitting:
            out.solve = splitting_solve(problem, *splitting_, options_);
            break;
    }
    out.increment = h * out.solve.gamma.col(0);
    out.y1 = y0 + out.increment;
    return out;
}

RunResult integrate(const HamiltonianSystem& system, const RunConfig& config) {
    if (!(config.h > 0.0) || !(config.t_end > 0.0)) {
        throw std::invalid_argument("integrate: h and t_end must be positive");
    }
    if (config.record_every < 1) throw std::invalid_argument("integrate: record_every must be >= 1");
    const HbvmStepper stepper(system, config.k, config.s, config.options);
    const bool newton_type = config.options.solver != SolverKind::fixed_point;
    const std::int64_t total = step_count(config.h, config.t_end);

    RunResult result;
    RunStats& stats = result.stats;
    Eigen::VectorXd y = system.initial_state();
    // Compensated (Kahan) accumulation of the increments h gamma_0.
    Eigen::VectorXd carry = Eigen::VectorXd::Zero(y.size());
    const double h0 = system.energy(y);
    stats.initial_energy = h0;
    result.trajectory.times.push_back(0.0);
    result.trajectory.states.push_back(y);

    for (std::int64_t n = 1; n <= total; ++n) {
        const double t = static_cast<double>(n) * config.h;
        HbvmStepper::Step step;
        try {
            step = stepper.step(y, config.h);
        } catch (const std::domain_error&) {
            stats.all_converged = false;
            stats.failure_time = t;
            break;
        }
        ++stats.steps;
        stats.total_outer_iterations += step.solve.outer_iterations;
        stats.total_inner_iterations += step.solve.inner_iterations_total;
        stats.gradient_evaluations += step.solve.gradient_evaluations;
        if (newton_type) {
            ++stats.hessian_evaluations;
            ++stats.factorizations;
        }
        if (!step.solve.converged) {
            stats.all_converged = false;
            stats.failure_time = t;
            break;
        }
        const Eigen::VectorXd increment = step.increment + carry;
        Eigen::VectorXd next = y + increment;
        carry = increment - (next - y);
        y = std::move(next);
        stats.max_hamiltonian_error = std::max(stats.max_hamiltonian_error, std::abs(system.energy(y) - h0));
        if (record_step(n, total, config.record_every)) {
            result.trajectory.times.push_back(t);
            result.trajectory.states.push_back(y);
        }
    }
    return result;
}

double solution_error(const Trajectory& trajectory, const Trajectory& reference) {
    if (trajectory.times.size() != trajectory.states.size() || reference.times.size() != reference.states.size()) {
        throw std::invalid_argument("solution_error: malformed trajectory");
    }
    double worst = 0.0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
        const double t = trajectory.times[i];
        const double slack = 1e-9 * std::max(1.0, std::abs(t));
        while (j < reference.times.size() && reference.times[j] < t - slack) ++j;
        if (j == reference.times.size() || std::abs(reference.times[j] - t) > slack) {
            throw std::invalid_argument("solution_error: time grids do not match");
        }
        const Eigen::VectorXd& ref = reference.states[j];
        if (ref.size() != trajectory.states[i].size()) {
            throw std::invalid_argument("solution_error: state dimensions differ");
        }
        worst = std::max(worst, (trajectory.states[i] - ref).norm() / (1.0 + ref.norm()));
    }
    return worst;
}

std::vector<OrderSample> order_study(const HamiltonianSystem& system, int k, int s, std::span<const double> h_list,
                                     double t_end, const std::function<Eigen::VectorXd(double)>& exact,
                                     const SolveOptions& options) {
    if (h_list.empty()) return {};
    auto final_state = [&](double h) {
        RunConfig cfg;
        cfg.k = k;
        cfg.s = s;
        cfg.h = h;
        cfg.t_end = t_end;
        cfg.options = options;
        cfg.record_every = static_cast<int>(std::min<std::int64_t>(step_count(h, t_end), 1 << 30));
        RunResult run = integrate(system, cfg);
        if (!run.stats.all_converged) throw std::runtime_error("order_study: solver failed to converge");
        return std::pair{run.trajectory.times.back(), run.trajectory.states.back()};
    };

    std::optional<Eigen::VectorXd> reference;
    if (!exact) {
        const double h_min = *std::min_element(h_list.begin(), h_list.end());
        reference = final_state(h_min / 16.0).second;
    }
    std::vector<OrderSample> samples;
    for (double h : h_list) {
        const auto [t, y] = final_state(h);
        const Eigen::VectorXd ref = exact ? exact(t) : *reference;
        samples.push_back({h, (y - ref).norm()});
    }
    return samples;
}

std::vector<double> order_ratios(std::span<const OrderSample> samples) {
    std::vector<double> ratios;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) ratios.push_back(samples[i].error / samples[i + 1].error);
    return ratios;
}

}  // namespace hbvm
