#include "hbvm/convergence.hpp"

#include <cmath>
#include <stdexcept>

namespace hbvm {

namespace {

Eigen::MatrixXcd nilpotent_part(const SplittingData& data) {
    return (data.U - Eigen::MatrixXd::Identity(data.s, data.s)).cast<Complex>();
}

Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd& M, int mu) {
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(M.rows(), M.cols());
    for (int i = 0; i < mu; ++i) result = result * M;
    return result;
}

double averaged_norm(const Eigen::MatrixXcd& M, int mu) {
    return std::pow(infinity_norm(matrix_power(M, mu)), 1.0 / mu);
}

}  // namespace

Eigen::MatrixXcd iteration_matrix(Complex q, const SplittingData& data) {
    const int s = data.s;
    const Eigen::MatrixXcd L = data.L.cast<Complex>();
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(s, s);
    const Eigen::MatrixXcd lhs = I - q * L;
    // I - qL is lower triangular with diagonal 1 - q d.
    if (std::abs(Complex(1.0) - q * data.d) < 1e-14) {
        throw std::domain_error("iteration_matrix: I - qL is singular at q = 1/d");
    }
    const Eigen::MatrixXcd rhs = q * (L * nilpotent_part(data));
    return lhs.triangularView<Eigen::Lower>().solve(rhs);
}

double spectral_radius(const Eigen::MatrixXcd& M) {
    if (M.rows() != M.cols()) throw std::invalid_argument("spectral_radius: matrix must be square");
    if (M.size() == 0) return 0.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(M, false);
    if (solver.info() != Eigen::Success) throw std::runtime_error("spectral_radius: eigen-solver failed");
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_radius(const Eigen::MatrixXd& M) {
    return spectral_radius(Eigen::MatrixXcd(M.cast<Complex>()));
}

double infinity_norm(const Eigen::MatrixXcd& M) {
    return M.cwiseAbs().rowwise().sum().maxCoeff();
}

double axis_radius(double x, const SplittingData& data) {
    return spectral_radius(iteration_matrix(Complex(0.0, x), data));
}

AxisMaximum rho_star(const SplittingData& data, const ScanOptions& options) {
    return maximize_on_axis([&data](double x) { return axis_radius(x, data); }, options,
                            rho_inf(data));
}

double rho_tilde(const SplittingData& data) {
    return spectral_radius(Eigen::MatrixXcd(data.L.cast<Complex>() * nilpotent_part(data)));
}

double rho_inf(const SplittingData& data) {
    return spectral_radius(nilpotent_part(data));
}

AveragedFactors averaged_factors(const SplittingData& data, int mu, const ScanOptions& options) {
    if (mu < 1) throw std::invalid_argument("averaged_factors: mu must be >= 1");
    AveragedFactors f;
    f.mu = mu;
    const Eigen::MatrixXcd N = nilpotent_part(data);
    f.rho_inf = averaged_norm(N, mu);
    f.rho_tilde = averaged_norm(data.L.cast<Complex>() * N, mu);
    f.rho_star = maximize_on_axis(
                     [&data, mu](double x) {
                         return averaged_norm(iteration_matrix(Complex(0.0, x), data), mu);
                     },
                     options, f.rho_inf)
                     .value;
    return f;
}

AmplificationReport analyze(const SplittingData& data, std::span<const int> mus, const ScanOptions& options) {
    AmplificationReport report;
    report.s = data.s;
    const AxisMaximum peak = rho_star(data, options);
    report.rho_star = peak.value;
    report.x_star = peak.x;
    report.rho_tilde = rho_tilde(data);
    report.rho_inf = rho_inf(data);
    for (int mu : mus) report.averaged.push_back(averaged_factors(data, mu, options));
    return report;
}

}  // namespace hbvm
