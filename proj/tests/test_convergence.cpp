#include <doctest.h>

#include <cmath>
#include <limits>

#include "hbvm/convergence.hpp"
#include "hbvm/hamiltonian.hpp"
#include "hbvm/nlsolve.hpp"
#include "oracles.hpp"

using namespace hbvm;

namespace {

// Tables of amplification factors for s = 2..6: (rho*, rho~) and, for
// mu = 1, 2, 3, (rho*_mu, rho~_mu, rho_inf_mu).
constexpr double kTable2[5][2] = {
    {0.1340, 0.0774}, {0.2536, 0.0870}, {0.3291, 0.0859}, {0.3709, 0.0654}, {0.4353, 0.0650}};
constexpr double kTable3[5][9] = {
    {0.1340, 0.0774, 0.0981, 0.1340, 0.0774, 0.0, 0.1340, 0.0774, 0.0},
    {0.4492, 0.0874, 0.2606, 0.3423, 0.0873, 0.1091, 0.3087, 0.0872, 0.0},
    {0.4751, 0.1459, 0.4751, 0.4098, 0.1200, 0.1757, 0.3848, 0.1091, 0.1294},
    {0.8625, 0.2045, 0.7471, 0.6775, 0.1385, 0.2872, 0.5874, 0.1154, 0.1747},
    {3.0797, 0.2747, 1.4988, 1.2780, 0.1356, 0.4929, 0.9451, 0.1121, 0.2697}};

}  // namespace

TEST_CASE("iteration matrix limits") {
    for (int s = 2; s <= 6; ++s) {
        const SplittingData data = build_splitting(s);
        CHECK(iteration_matrix(Complex(0.0, 0.0), data).cwiseAbs().maxCoeff() == 0.0);
        const Eigen::MatrixXcd far = iteration_matrix(Complex(0.0, 1e9), data);
        const Eigen::MatrixXcd limit = -(data.U - Eigen::MatrixXd::Identity(s, s)).cast<Complex>();
        CHECK((far - limit).cwiseAbs().maxCoeff() < 1e-7);
        CHECK_THROWS_AS(iteration_matrix(Complex(1.0 / data.d, 0.0), data), std::domain_error);
        // conjugate symmetry of the axis scan
        CHECK(std::abs(axis_radius(2.5, data) - axis_radius(-2.5, data)) < 1e-14);
    }
}

TEST_CASE("iteration matrix against a dense solve") {
    const SplittingData data = build_splitting(4);
    const Eigen::MatrixXcd L = data.L.cast<Complex>();
    const Eigen::MatrixXcd N = (data.U - Eigen::MatrixXd::Identity(4, 4)).cast<Complex>();
    for (Complex q : {Complex(-1.0, 2.0), Complex(0.0, 7.0), Complex(-30.0, 0.5)}) {
        const Eigen::MatrixXcd dense =
            (Eigen::MatrixXcd::Identity(4, 4) - q * L).fullPivLu().solve(Eigen::MatrixXcd(q * L * N));
        CHECK((iteration_matrix(q, data) - dense).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("amplification factors against the tables") {
    const std::vector<int> mus{1, 2, 3};
    for (int s = 2; s <= 6; ++s) {
        CAPTURE(s);
        const AmplificationReport r = analyze(build_splitting(s), mus);
        CHECK(std::abs(r.rho_star - kTable2[s - 2][0]) < 5e-4);
        CHECK(std::abs(r.rho_tilde - kTable2[s - 2][1]) < 5e-4);
        CHECK(r.rho_inf < 1e-12);
        REQUIRE(r.averaged.size() == 3);
        for (int m = 0; m < 3; ++m) {
            CAPTURE(m + 1);
            CHECK(std::abs(r.averaged[m].rho_star - kTable3[s - 2][3 * m]) < 5e-4);
            CHECK(std::abs(r.averaged[m].rho_tilde - kTable3[s - 2][3 * m + 1]) < 5e-4);
            CHECK(std::abs(r.averaged[m].rho_inf - kTable3[s - 2][3 * m + 2]) < 5e-4);
            if (m + 1 >= s) CHECK(r.averaged[m].rho_inf < 1e-12);
        }
    }
}

TEST_CASE("rho_tilde is the slope at the origin") {
    for (int s = 2; s <= 6; ++s) {
        const SplittingData data = build_splitting(s);
        const double x = 1e-6;
        CHECK(std::abs(axis_radius(x, data) / x - rho_tilde(data)) < 1e-4);
    }
}

TEST_CASE("inner sweeps contract at the predicted rate") {
    // For the harmonic oscillator J Hess has eigenvalues +-i omega, so
    // repeated sweeps with zero right-hand side contract like rho(Z(i h omega)).
    const HamiltonianSystem osc = harmonic_oscillator(1.0);
    std::mt19937 rng(3);
    for (int s : {2, 3, 4}) {
        const SplittingData data = build_splitting(s);
        for (double h : {0.5, 3.0, 20.0}) {
            CAPTURE(s);
            CAPTURE(h);
            const SplittingInnerSolver inner(data, h, osc.hessian(osc.initial_state()), osc.J());
            Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(2, s);
            for (int j = 0; j < s; ++j) delta.col(j) = oracle::random_vector(rng, 2, 1.0);
            const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(2, s);
            for (int it = 0; it < 60; ++it) {
                delta = inner.sweep(zero, delta);
                delta /= delta.norm();
            }
            double log_rate = 0.0;
            const int window = 40;
            for (int it = 0; it < window; ++it) {
                const Eigen::MatrixXd next = inner.sweep(zero, delta);
                log_rate += std::log(next.norm());
                delta = next / next.norm();
            }
            const double rate = std::exp(log_rate / window);
            CHECK(std::abs(rate - axis_radius(h, data)) < 2e-2 * axis_radius(h, data));
        }
    }
}

TEST_CASE("serial and parallel axis scans agree exactly") {
    for (int s = 2; s <= 6; ++s) {
        const SplittingData data = build_splitting(s);
        ScanOptions serial;
        serial.execution = Execution::serial;
        ScanOptions parallel;
        parallel.execution = Execution::parallel;
        const AxisMaximum a = rho_star(data, serial);
        const AxisMaximum b = rho_star(data, parallel);
        CHECK(a.value == b.value);
        CHECK(a.x == b.x);
        const AveragedFactors fa = averaged_factors(data, 2, serial);
        const AveragedFactors fb = averaged_factors(data, 2, parallel);
        CHECK(fa.rho_star == fb.rho_star);
    }
}

TEST_CASE("axis maximization") {
    ScanOptions opts;
    opts.points = 200;
    // peak of x / (1 + x^2) at x = 1
    const AxisMaximum m = maximize_on_axis([](double x) { return x / (1.0 + x * x); }, opts);
    CHECK(std::abs(m.x - 1.0) < 1e-6);
    CHECK(std::abs(m.value - 0.5) < 1e-12);
    // monotone function whose supremum is the limit
    const AxisMaximum lim = maximize_on_axis([](double x) { return x / (1.0 + x); }, opts, 1.0);
    CHECK(lim.value == 1.0);
    CHECK(std::isinf(lim.x));
    const std::vector<double> grid = log_grid(1e-3, 1e4, 8);
    CHECK(grid.front() == doctest::Approx(1e-3));
    CHECK(grid.back() == 1e4);
    CHECK_THROWS_AS(log_grid(0.0, 1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(log_grid(1.0, 2.0, 1), std::invalid_argument);
}
