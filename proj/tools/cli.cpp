#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <stdexcept>

#include <CLI11.hpp>

#include "hbvm/convergence.hpp"
#include "hbvm/csv.hpp"
#include "hbvm/experiment.hpp"
#include "hbvm/splitting.hpp"
#include "hbvm/tableau.hpp"

namespace hbvm::cli {

namespace {

using csv::format_double;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Writes through `fallback` when path is empty, otherwise to the named file.
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
    if (path.empty()) {
        body(fallback);
        fallback.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open '" + path + "' for writing");
    body(file);
    file.flush();
    if (!file) throw IoError("write to '" + path + "' failed");
}

void write_tableau(std::ostream& os, const HbvmTableau& t) {
    os << "block,i,c,b";
    for (int j = 1; j <= t.k; ++j) os << ",col_" << j;
    os << ",row_sum\n";
    for (int i = 0; i < t.k; ++i) {
        os << "A," << i + 1 << ',' << format_double(t.c[i]) << ',' << format_double(t.b[i]);
        for (int j = 0; j < t.k; ++j) os << ',' << format_double(t.A(i, j));
        os << ',' << format_double(t.A.row(i).sum()) << '\n';
    }
    for (Eigen::Index i = 0; i < t.Xhat.rows(); ++i) {
        os << "Xhat," << i + 1 << ",,";
        for (int j = 0; j < t.k; ++j) os << ',' << (j < t.Xhat.cols() ? format_double(t.Xhat(i, j)) : "");
        os << ",\n";
    }
}

void write_splitting(std::ostream& os, const SplittingData& data) {
    os << "quantity,i,j,value\n";
    for (int i = 0; i < data.s; ++i) os << "chat," << i + 1 << ",," << format_double(data.chat[i]) << '\n';
    os << "d,,," << format_double(data.d) << '\n';
    auto matrix = [&os](const char* name, const Eigen::MatrixXd& M) {
        for (Eigen::Index i = 0; i < M.rows(); ++i) {
            for (Eigen::Index j = 0; j < M.cols(); ++j) {
                os << name << ',' << i + 1 << ',' << j + 1 << ',' << format_double(M(i, j)) << '\n';
            }
        }
    };
    matrix("L", data.L);
    matrix("U", data.U);
    const std::vector<double> residuals = verify_conditions(data);
    for (std::size_t l = 0; l < residuals.size(); ++l) {
        os << "condition_residual," << l + 1 << ",," << format_double(residuals[l]) << '\n';
    }
}

void write_analysis(std::ostream& os, const std::vector<AmplificationReport>& reports) {
    os << "s,mu,rho_star,rho_tilde,rho_inf,x_star\n";
    for (const AmplificationReport& r : reports) {
        os << r.s << ",," << format_double(r.rho_star) << ',' << format_double(r.rho_tilde) << ','
           << format_double(r.rho_inf) << ',' << format_double(r.x_star) << '\n';
        for (const AveragedFactors& a : r.averaged) {
            os << r.s << ',' << a.mu << ',' << format_double(a.rho_star) << ',' << format_double(a.rho_tilde) << ','
               << format_double(a.rho_inf) << ",\n";
        }
    }
}

std::vector<RunSpec> read_sweep(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return parse_sweep(in);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"HBVM(k,s) and Gauss-Legendre integrators with a triangular-splitting stage solver", "hbvm"};
    app.require_subcommand(1);

    int k = 2;
    int s = 2;
    std::string out_path;

    auto* tableau_cmd = app.add_subcommand("tableau", "Butcher tableau A, b, c and the matrix Xhat");
    tableau_cmd->add_option("--k", k, "Number of Gauss nodes")->required();
    tableau_cmd->add_option("--s", s, "Polynomial degree")->required();
    tableau_cmd->add_option("--out", out_path, "Output CSV (default stdout)");

    auto* splitting_cmd = app.add_subcommand("splitting", "Auxiliary abscissae and triangular factors");
    splitting_cmd->add_option("--s", s, "Polynomial degree, 2..6")->required();
    splitting_cmd->add_option("--out", out_path, "Output CSV (default stdout)");

    std::vector<int> s_list{2, 3, 4, 5, 6};
    std::vector<int> mu_list{1, 2, 3};
    int points = ScanOptions{}.points;
    bool serial = false;
    auto* analyze_cmd = app.add_subcommand("analyze", "Amplification factors of the inner iteration");
    analyze_cmd->add_option("--s", s_list, "Values of s, 2..6")->delimiter(',');
    analyze_cmd->add_option("--mu", mu_list, "Inner iteration counts for the averaged factors")->delimiter(',');
    analyze_cmd->add_option("--points", points, "Grid points on the imaginary axis");
    analyze_cmd->add_flag("--serial", serial, "Scan without threads");
    analyze_cmd->add_option("--out", out_path, "Output CSV (default stdout)");

    RunSpec spec;
    std::string method = "hbvm";
    std::string solver = "splitting";
    int every = 1;
    std::string stats_path;
    auto* integrate_cmd = app.add_subcommand("integrate", "Integrate one problem and report statistics");
    integrate_cmd->set_help_flag("--help", "Print this help message and exit");  // -h would clash with --h
    integrate_cmd->add_option("--problem", spec.problem, "charged-particle, fpu or harmonic")->required();
    integrate_cmd->add_option("--method", method, "hbvm or composition6");
    integrate_cmd->add_option("--k", spec.k, "Number of Gauss nodes");
    integrate_cmd->add_option("--s", spec.s, "Polynomial degree");
    integrate_cmd->add_option("--h", spec.h, "Stepsize");
    integrate_cmd->add_option("--t-end", spec.t_end, "Final time");
    integrate_cmd->add_option("--solver", solver, "splitting, newton or fixed-point");
    integrate_cmd->add_option("--mu", spec.mu, "Inner iterations per outer iteration");
    integrate_cmd->add_option("--tol", spec.tol, "Stopping tolerance on the correction");
    integrate_cmd->add_option("--max-outer", spec.max_outer, "Outer iterations allowed per step");
    integrate_cmd->add_option("--omega", spec.omega, "Harmonic oscillator frequency");
    integrate_cmd->add_flag("--reference", spec.reference, "Also report the error against HBVM(10,5)");
    integrate_cmd->add_option("--every", every, "Record every n-th step in the trajectory")->check(CLI::PositiveNumber);
    integrate_cmd->add_option("--out", out_path, "Trajectory CSV (omitted when not given)");
    integrate_cmd->add_option("--stats", stats_path, "Stats CSV (default stdout)");

    std::string spec_path;
    int jobs = 1;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run every configuration of a sweep file");
    sweep_cmd->add_option("--spec", spec_path, "Sweep file")->required();
    sweep_cmd->add_option("--jobs", jobs, "Configurations run at a time")->check(CLI::PositiveNumber);
    sweep_cmd->add_flag("--serial", serial, "Run configurations one after another");
    sweep_cmd->add_option("--out", out_path, "Output CSV (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*tableau_cmd) {
            if (s < 1 || k < s || k > 50) throw UsageError("need 1 <= s <= k <= 50");
            const HbvmTableau t = build_tableau(k, s);
            emit(out_path, out, [&](std::ostream& os) { write_tableau(os, t); });
        } else if (*splitting_cmd) {
            if (s < 2 || s > 6) throw UsageError("s must be between 2 and 6");
            const SplittingData data = build_splitting(s);
            emit(out_path, out, [&](std::ostream& os) { write_splitting(os, data); });
        } else if (*analyze_cmd) {
            if (std::any_of(s_list.begin(), s_list.end(), [](int v) { return v < 2 || v > 6; })) {
                throw UsageError("s must be between 2 and 6");
            }
            if (std::any_of(mu_list.begin(), mu_list.end(), [](int v) { return v < 1; })) {
                throw UsageError("mu must be >= 1");
            }
            if (points < 2) throw UsageError("points must be >= 2");
            ScanOptions opts;
            opts.points = points;
            opts.execution = serial ? Execution::serial : Execution::parallel;
            std::vector<AmplificationReport> reports;
            for (int sv : s_list) reports.push_back(analyze(build_splitting(sv), mu_list, opts));
            emit(out_path, out, [&](std::ostream& os) { write_analysis(os, reports); });
        } else if (*integrate_cmd) {
            spec.method = parse_method(method);
            spec.solver = parse_solver(solver);
            validate(spec);
            // Fail on an unwritable destination before spending time on the run.
            if (!out_path.empty()) emit(out_path, out, [](std::ostream&) {});
            if (!stats_path.empty()) emit(stats_path, out, [](std::ostream&) {});
            const RunOutcome outcome = execute(spec, every);
            if (!out_path.empty()) {
                emit(out_path, out, [&](std::ostream& os) { csv::write_trajectory(os, outcome.result.trajectory); });
            }
            emit(stats_path, out, [&](std::ostream& os) {
                os << stats_header() << '\n' << stats_row(spec, outcome.result.stats) << '\n';
            });
        } else if (*sweep_cmd) {
            const std::vector<RunSpec> specs = read_sweep(spec_path);
            const std::vector<std::string> rows =
                run_sweep(specs, jobs, serial ? Execution::serial : Execution::parallel);
            emit(out_path, out, [&](std::ostream& os) {
                os << stats_header() << '\n';
                for (const std::string& row : rows) os << row << '\n';
            });
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace hbvm::cli
