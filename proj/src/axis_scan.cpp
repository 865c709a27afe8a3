#include "hbvm/axis_scan.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hbvm {

namespace {

// Golden-section search for a maximum of g on [a, b], in log10(x) coordinates.
std::pair<double, double> golden_section(const std::function<double(double)>& g, double a, double b,
                                         double tolerance) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = g(x1);
    double f2 = g(x2);
    for (int it = 0; it < 200 && (b - a) > tolerance * (std::abs(a) + std::abs(b) + 1e-300); ++it) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = g(x2);
        }
    }
    return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace

std::vector<double> log_grid(double lower, double upper, int points) {
    if (!(lower > 0.0) || !(upper > lower) || points < 2) {
        throw std::invalid_argument("log_grid: need 0 < lower < upper and at least two points");
    }
    std::vector<double> grid(points);
    const double a = std::log10(lower);
    const double step = (std::log10(upper) - a) / (points - 1);
    for (int i = 0; i < points; ++i) grid[i] = std::pow(10.0, a + step * i);
    grid.back() = upper;
    return grid;
}

void evaluate_on_grid_serial(const std::function<double(double)>& f, std::span<const double> grid,
                             std::span<double> values) {
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid[i]);
}

void evaluate_on_grid_parallel(const std::function<double(double)>& f, std::span<const double> grid,
                               std::span<double> values) {
    const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) values[i] = f(grid[i]);
}

AxisMaximum maximize_on_axis(const std::function<double(double)>& f, const ScanOptions& options,
                             std::optional<double> limit) {
    const std::vector<double> grid = log_grid(options.lower, options.upper, options.points);
    std::vector<double> values(grid.size());
    if (options.execution == Execution::parallel) {
        evaluate_on_grid_parallel(f, grid, values);
    } else {
        evaluate_on_grid_serial(f, grid, values);
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) best = i;
    }
    AxisMaximum result{values[best], grid[best]};

    const std::size_t lo = best == 0 ? 0 : best - 1;
    const std::size_t hi = best + 1 == grid.size() ? best : best + 1;
    if (hi > lo) {
        auto in_log = [&](double t) { return f(std::pow(10.0, t)); };
        const auto [t, v] = golden_section(in_log, std::log10(grid[lo]), std::log10(grid[hi]),
                                           options.relative_tolerance);
        if (v > result.value) result = {v, std::pow(10.0, t)};
    }
    if (limit && *limit > result.value) {
        result = {*limit, std::numeric_limits<double>::infinity()};
    }
    return result;
}

}  // namespace hbvm
