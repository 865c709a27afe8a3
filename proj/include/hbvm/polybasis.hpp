#pragma once

// Orthonormal shifted Legendre polynomials on [0,1] and the Gauss-Legendre
// rules built from their roots.

#include <vector>

namespace hbvm {

/// Gauss-Legendre rule on [0,1]: strictly increasing nodes, positive weights.
struct QuadratureRule {
    int k = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Recurrence coefficient 1 / (2 sqrt(4 i^2 - 1)), i >= 1.
double xi(int i);

/// P_j(x), with deg P_j = j and int_0^1 P_i P_j = delta_ij.
double legendre_eval(int j, double x);

/// P_0(x), ..., P_n(x) from a single recurrence sweep.
std::vector<double> legendre_values(int n, double x);

/// int_0^c P_j(x) dx, evaluated by a Gauss rule that is exact for degree j.
double legendre_integral(int j, double c);

/// k-point Gauss-Legendre rule on [0,1], 1 <= k <= 50.
/// Throws std::invalid_argument for k out of range and std::runtime_error
/// if Newton's method fails to converge on a root.
QuadratureRule gauss_rule(int k);

}  // namespace hbvm
