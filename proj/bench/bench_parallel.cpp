// Serial vs OpenMP timings for the two parallel kernels: the imaginary-axis
// grid scan and the configuration sweep. Prints CSV.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <vector>

#include <CLI11.hpp>
#include <omp.h>

#include "hbvm/axis_scan.hpp"
#include "hbvm/convergence.hpp"
#include "hbvm/experiment.hpp"

using namespace hbvm;

namespace {

template <class F>
double best_of(int repeat, F&& body) {
    double best = 1e300;
    for (int r = 0; r < repeat; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        body();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void report(const char* kernel, const char* size, double serial, double parallel, bool identical) {
    std::printf("%s,%s,%d,%.6f,%.6f,%.2f,%s\n", kernel, size, omp_get_max_threads(), serial, parallel,
                serial / parallel, identical ? "yes" : "no");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs parallel kernels"};
    int points = 200000;
    int repeat = 3;
    int jobs = 0;
    double t_end = 20.0;
    app.add_option("--points", points, "grid points for the axis scan")->check(CLI::PositiveNumber);
    app.add_option("--repeat", repeat, "timing repetitions, best is kept")->check(CLI::PositiveNumber);
    app.add_option("--jobs", jobs, "sweep jobs (0: OpenMP default)");
    app.add_option("--t-end", t_end, "integration interval of each sweep run")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);
    if (jobs <= 0) jobs = omp_get_max_threads();

    std::printf("kernel,size,threads,serial_s,parallel_s,speedup,identical\n");

    const SplittingData data = build_splitting(6);
    const std::vector<double> grid = log_grid(1e-3, 1e4, points);
    std::vector<double> a(grid.size()), b(grid.size());
    const auto f = [&data](double x) { return axis_radius(x, data); };
    const double ts = best_of(repeat, [&] { evaluate_on_grid_serial(f, grid, a); });
    const double tp = best_of(repeat, [&] { evaluate_on_grid_parallel(f, grid, b); });
    char size[64];
    std::snprintf(size, sizeof size, "s=6 points=%d", points);
    report("axis_scan", size, ts, tp, a == b);

    std::vector<RunSpec> specs;
    for (int k : {2, 4, 6, 8}) {
        for (SolverKind solver : {SolverKind::fixed_point, SolverKind::splitting, SolverKind::simplified_newton}) {
            RunSpec spec;
            spec.problem = "charged-particle";
            spec.k = k;
            spec.t_end = t_end;
            spec.solver = solver;
            specs.push_back(spec);
        }
    }
    std::vector<std::string> rs, rp;
    const double ss = best_of(repeat, [&] { rs = run_sweep(specs, 1, Execution::serial); });
    const double sp = best_of(repeat, [&] { rp = run_sweep(specs, jobs, Execution::parallel); });
    std::snprintf(size, sizeof size, "runs=%zu t_end=%g", specs.size(), t_end);
    report("sweep", size, ss, sp, rs == rp);
    return 0;
}
