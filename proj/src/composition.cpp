#include <array>
#include <cmath>
#include <stdexcept>

#include "hbvm/integrator.hpp"

namespace hbvm {

namespace {

constexpr double kDivergenceNorm = 1e10;

// Triple jump raising a symmetric method of order p to order p + 2.
std::array<double, 3> triple_jump(int p) {
    const double r = std::pow(2.0, 1.0 / (p + 1));
    const double a = 1.0 / (2.0 - r);
    return {a, -r * a, a};
}

// Order 2 -> 4 -> 6, nested: 9 Stormer-Verlet substeps.
std::array<double, 9> build_coefficients() {
    const std::array<double, 3> inner = triple_jump(2);
    const std::array<double, 3> outer = triple_jump(4);
    std::array<double, 9> g{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) g[3 * i + j] = outer[i] * inner[j];
    }
    return g;
}

const std::array<double, 9> kCoefficients = build_coefficients();

}  // namespace

std::span<const double> composition6_coefficients() {
    return kCoefficients;
}

RunResult composition6_stormer_verlet(const HamiltonianSystem& system, double h, double t_end, int record_every) {
    if (!system.separable()) {
        throw std::invalid_argument("composition6_stormer_verlet: Hamiltonian must be separable");
    }
    if (record_every < 1) throw std::invalid_argument("composition6_stormer_verlet: record_every must be >= 1");
    const std::int64_t total = step_count(h, t_end);
    const int m = system.half_dimension();

    RunResult result;
    RunStats& stats = result.stats;
    Eigen::VectorXd y = system.initial_state();
    const double h0 = system.energy(y);
    stats.initial_energy = h0;
    result.trajectory.times.push_back(0.0);
    result.trajectory.states.push_back(y);

    // For separable H the q-block of grad H depends on q only and the p-block on p only.
    Eigen::VectorXd force = system.gradient(y).head(m);
    ++stats.gradient_evaluations;

    for (std::int64_t n = 1; n <= total; ++n) {
        for (double gamma : kCoefficients) {
            const double tau = gamma * h;
            y.tail(m) -= 0.5 * tau * force;
            y.head(m) += tau * system.gradient(y).tail(m);
            const Eigen::VectorXd g = system.gradient(y);
            force = g.head(m);
            y.tail(m) -= 0.5 * tau * force;
            stats.gradient_evaluations += 2;
        }
        ++stats.steps;
        const double t = static_cast<double>(n) * h;
        const double norm = y.norm();
        if (!std::isfinite(norm) || norm > kDivergenceNorm) {
            stats.all_converged = false;
            stats.failure_time = t;
            break;
        }
        stats.max_hamiltonian_error = std::max(stats.max_hamiltonian_error, std::abs(system.energy(y) - h0));
        if (n % record_every == 0 || n == total) {
            result.trajectory.times.push_back(t);
            result.trajectory.states.push_back(y);
        }
    }
    return result;
}

}  // namespace hbvm
