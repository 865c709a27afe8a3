#pragma once

// Maximization of a real function along the positive imaginary axis,
// q = i x with x in [lower, upper], by a log-spaced grid scan followed by
// golden-section refinement around the best grid point.
//
// The grid scan is the data-parallel kernel of the convergence analysis. Both
// the serial reference and the OpenMP kernel fill the same value array, and
// the argmax is always reduced serially (lowest index wins ties), so the two
// execution modes return bit-identical results.

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace hbvm {

enum class Execution { serial, parallel };

struct ScanOptions {
    double lower = 1e-3;
    double upper = 1e4;
    int points = 2000;
    double relative_tolerance = 1e-10;
    Execution execution = Execution::parallel;
};

struct AxisMaximum {
    double value = 0.0;
    double x = 0.0;  // +infinity when the supremum is the q -> infinity limit
};

std::vector<double> log_grid(double lower, double upper, int points);

/// values[i] = f(grid[i]); f must be safe to call concurrently.
void evaluate_on_grid_serial(const std::function<double(double)>& f, std::span<const double> grid,
                             std::span<double> values);
void evaluate_on_grid_parallel(const std::function<double(double)>& f, std::span<const double> grid,
                               std::span<double> values);

/// sup of f over [lower, upper]; when `limit` (the value of f as x -> infinity)
/// is given and exceeds the interior maximum, it is reported with x = +inf.
AxisMaximum maximize_on_axis(const std::function<double(double)>& f, const ScanOptions& options,
                             std::optional<double> limit = std::nullopt);

}  // namespace hbvm
