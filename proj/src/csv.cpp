#include "hbvm/csv.hpp"

#include <cmath>
#include <cstdio>

namespace hbvm::csv {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

void write_trajectory(std::ostream& out, const Trajectory& trajectory) {
    const Eigen::Index n = trajectory.states.empty() ? 0 : trajectory.states.front().size();
    out << 't';
    for (Eigen::Index i = 1; i <= n; ++i) out << ",y_" << i;
    out << '\n';
    for (std::size_t r = 0; r < trajectory.times.size(); ++r) {
        out << format_double(trajectory.times[r]);
        for (Eigen::Index i = 0; i < n; ++i) out << ',' << format_double(trajectory.states[r](i));
        out << '\n';
    }
}

}  // namespace hbvm::csv
