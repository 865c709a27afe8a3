#pragma once

// Linear convergence analysis of the inner iteration on the test equation
// y' = lambda y, q = h lambda. The error is propagated by
//
//     Z(q) = q (I - q L)^{-1} L (U - I),
//
// which tends to -(U - I) as |q| -> infinity and vanishes at q = 0.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hbvm/axis_scan.hpp"
#include "hbvm/splitting.hpp"

namespace hbvm {

using Complex = std::complex<double>;

struct AveragedFactors {
    int mu = 0;
    double rho_star = 0.0;   // sup_x ||Z(ix)^mu||^{1/mu}
    double rho_tilde = 0.0;  // ||(L(U-I))^mu||^{1/mu}
    double rho_inf = 0.0;    // ||(U-I)^mu||^{1/mu}
};

struct AmplificationReport {
    int s = 0;
    double rho_star = 0.0;
    double x_star = 0.0;
    double rho_tilde = 0.0;
    double rho_inf = 0.0;
    std::vector<AveragedFactors> averaged;
};

/// Throws std::domain_error when I - qL is singular (q = 1/d).
Eigen::MatrixXcd iteration_matrix(Complex q, const SplittingData& data);

double spectral_radius(const Eigen::MatrixXcd& M);
double spectral_radius(const Eigen::MatrixXd& M);

/// Maximum absolute row sum.
double infinity_norm(const Eigen::MatrixXcd& M);

/// rho(Z(ix)).
double axis_radius(double x, const SplittingData& data);

/// Maximum amplification factor and its location on the positive imaginary axis.
AxisMaximum rho_star(const SplittingData& data, const ScanOptions& options = {});

/// rho(L(U-I)), the slope of rho(q) at q = 0.
double rho_tilde(const SplittingData& data);

/// rho(U-I), the q -> infinity limit.
double rho_inf(const SplittingData& data);

/// Averaged factors for mu iterations, infinity norm.
AveragedFactors averaged_factors(const SplittingData& data, int mu, const ScanOptions& options = {});

AmplificationReport analyze(const SplittingData& data, std::span<const int> mus,
                            const ScanOptions& options = {});

}  // namespace hbvm
