#include "hbvm/polybasis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hbvm {

namespace {

constexpr int kMaxGaussPoints = 50;
constexpr int kMaxNewtonIterations = 100;
constexpr double kNodeTolerance = 1e-15;

// Standard Legendre L_n(t) on [-1,1] and its derivative, by the Bonnet recurrence.
struct LegendrePair {
    double value;
    double derivative;
};

LegendrePair standard_legendre(int n, double t) {
    double p_prev = 1.0;
    double p = t;
    if (n == 0) return {1.0, 0.0};
    for (int j = 1; j < n; ++j) {
        const double p_next = ((2.0 * j + 1.0) * t * p - j * p_prev) / (j + 1.0);
        p_prev = p;
        p = p_next;
    }
    // L_n'(t) = n (t L_n - L_{n-1}) / (t^2 - 1); nodes never reach t = +-1.
    const double dp = n * (t * p - p_prev) / (t * t - 1.0);
    return {p, dp};
}

}  // namespace

double xi(int i) {
    if (i < 1) throw std::invalid_argument("xi: index must be >= 1");
    const double ii = static_cast<double>(i);
    return 1.0 / (2.0 * std::sqrt(4.0 * ii * ii - 1.0));
}

std::vector<double> legendre_values(int n, double x) {
    if (n < 0) throw std::invalid_argument("legendre_values: degree must be >= 0");
    std::vector<double> p(static_cast<std::size_t>(n) + 1);
    p[0] = 1.0;
    if (n == 0) return p;
    const double t = x - 0.5;
    p[1] = t / xi(1);
    // (x - 1/2) P_j = (j+1) xi_{j+1} P_{j+1} + j xi_j P_{j-1}
    for (int j = 1; j < n; ++j) {
        p[j + 1] = (t * p[j] - j * xi(j) * p[j - 1]) / ((j + 1) * xi(j + 1));
    }
    return p;
}

double legendre_eval(int j, double x) {
    return legendre_values(j, x).back();
}

double legendre_integral(int j, double c) {
    if (j < 0) throw std::invalid_argument("legendre_integral: degree must be >= 0");
    const QuadratureRule rule = gauss_rule(j / 2 + 1);
    double sum = 0.0;
    for (int i = 0; i < rule.k; ++i) {
        sum += rule.weights[i] * legendre_eval(j, c * rule.nodes[i]);
    }
    return c * sum;
}

QuadratureRule gauss_rule(int k) {
    if (k < 1 || k > kMaxGaussPoints) {
        throw std::invalid_argument("gauss_rule: k must lie in [1, 50], got " + std::to_string(k));
    }
    QuadratureRule rule;
    rule.k = k;
    rule.nodes.resize(k);
    rule.weights.resize(k);

    // Roots are found on [-1,1] for the upper half only and mirrored, so the
    // returned nodes are symmetric about 1/2 to rounding.
    const int half = (k + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double t = std::cos(std::numbers::pi * (4.0 * i + 3.0) / (4.0 * k + 2.0));
        bool converged = false;
        for (int it = 0; it < kMaxNewtonIterations; ++it) {
            const LegendrePair lp = standard_legendre(k, t);
            const double step = lp.value / lp.derivative;
            t -= step;
            if (std::abs(step) <= kNodeTolerance) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            throw std::runtime_error("gauss_rule: Newton iteration did not converge for k = " +
                                     std::to_string(k));
        }
        if (k % 2 == 1 && i == half - 1) t = 0.0;
        const double dp = standard_legendre(k, t).derivative;
        // Weight on [0,1]: half of 2 / ((1 - t^2) L_k'(t)^2).
        const double w = 1.0 / ((1.0 - t * t) * dp * dp);
        // t > 0 here; the node at (1 + t)/2 sits in the upper half.
        rule.nodes[k - 1 - i] = 0.5 * (1.0 + t);
        rule.nodes[i] = 0.5 * (1.0 - t);
        rule.weights[k - 1 - i] = w;
        rule.weights[i] = w;
    }
    return rule;
}

}  // namespace hbvm
