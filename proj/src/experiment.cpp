#include "hbvm/experiment.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "hbvm/csv.hpp"

namespace hbvm {

namespace {

std::string_view trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view text, std::string_view key) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw SpecError("invalid value '" + std::string(text) + "' for " + std::string(key));
    }
    return value;
}

bool parse_bool(std::string_view text, std::string_view key) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw SpecError("invalid boolean '" + std::string(text) + "' for " + std::string(key));
}

void assign(RunSpec& spec, std::string_view key, std::string_view value) {
    if (key == "problem") {
        spec.problem = std::string(value);
    } else if (key == "method") {
        spec.method = parse_method(value);
    } else if (key == "k") {
        spec.k = parse_number<int>(value, key);
    } else if (key == "s") {
        spec.s = parse_number<int>(value, key);
    } else if (key == "h") {
        spec.h = parse_number<double>(value, key);
    } else if (key == "t_end") {
        spec.t_end = parse_number<double>(value, key);
    } else if (key == "solver") {
        spec.solver = parse_solver(value);
    } else if (key == "mu") {
        spec.mu = parse_number<int>(value, key);
    } else if (key == "tol") {
        spec.tol = parse_number<double>(value, key);
    } else if (key == "max_outer") {
        spec.max_outer = parse_number<int>(value, key);
    } else if (key == "reference") {
        spec.reference = parse_bool(value, key);
    } else if (key == "omega") {
        spec.omega = parse_number<double>(value, key);
    } else {
        throw SpecError("unknown key '" + std::string(key) + "'");
    }
}

SolveOptions solve_options(const RunSpec& spec) {
    SolveOptions opts;
    opts.tol = spec.tol;
    opts.max_outer = spec.max_outer;
    opts.mu = spec.mu;
    opts.solver = spec.solver;
    return opts;
}

}  // namespace

HamiltonianSystem make_problem(std::string_view name, double omega) {
    if (name == "charged-particle") return charged_particle();
    if (name == "fpu") return fpu_modified();
    if (name == "harmonic") {
        if (!(omega > 0.0)) throw SpecError("omega must be positive");
        return harmonic_oscillator(omega);
    }
    throw SpecError("unknown problem '" + std::string(name) + "' (expected charged-particle, fpu or harmonic)");
}

SolverKind parse_solver(std::string_view name) {
    if (name == "fixed-point") return SolverKind::fixed_point;
    if (name == "newton") return SolverKind::simplified_newton;
    if (name == "splitting") return SolverKind::splitting;
    throw SpecError("unknown solver '" + std::string(name) + "' (expected fixed-point, newton or splitting)");
}

std::string_view solver_name(SolverKind kind) {
    switch (kind) {
        case SolverKind::fixed_point: return "fixed-point";
        case SolverKind::simplified_newton: return "newton";
        case SolverKind::splitting: return "splitting";
    }
    return "";
}

Method parse_method(std::string_view name) {
    if (name == "hbvm") return Method::hbvm;
    if (name == "composition6") return Method::composition6;
    throw SpecError("unknown method '" + std::string(name) + "' (expected hbvm or composition6)");
}

std::string_view method_name(Method method) {
    return method == Method::hbvm ? "hbvm" : "composition6";
}

void validate(const RunSpec& spec) {
    if (!(spec.h > 0.0) || !std::isfinite(spec.h)) throw SpecError("h must be positive");
    if (!(spec.t_end > 0.0) || !std::isfinite(spec.t_end)) throw SpecError("t_end must be positive");
    if (spec.method == Method::hbvm) {
        if (spec.s < 1 || spec.k < spec.s) throw SpecError("need k >= s >= 1");
        if (spec.k > 50) throw SpecError("k must not exceed 50");
        if (spec.solver == SolverKind::splitting && spec.s > 6) throw SpecError("splitting solver needs s <= 6");
        if (spec.mu < 1) throw SpecError("mu must be >= 1");
        if (!(spec.tol > 0.0)) throw SpecError("tol must be positive");
        if (spec.max_outer < 1) throw SpecError("max_outer must be >= 1");
    }
    if (spec.problem != "charged-particle" && spec.problem != "fpu" && spec.problem != "harmonic") {
        throw SpecError("unknown problem '" + spec.problem + "'");
    }
    if (spec.method == Method::composition6 && spec.problem == "charged-particle") {
        throw SpecError("composition6 needs a separable Hamiltonian");
    }
}

RunOutcome execute(const RunSpec& spec, int record_every) {
    validate(spec);
    const HamiltonianSystem system = make_problem(spec.problem, spec.omega);
    const std::int64_t total = step_count(spec.h, spec.t_end);
    const int every = spec.reference ? 1
                      : record_every > 0
                          ? record_every
                          : static_cast<int>(std::min<std::int64_t>(total, std::numeric_limits<int>::max()));
    RunOutcome outcome{spec, {}};
    if (spec.method == Method::composition6) {
        outcome.result = composition6_stormer_verlet(system, spec.h, spec.t_end, every);
    } else {
        RunConfig cfg;
        cfg.k = spec.k;
        cfg.s = spec.s;
        cfg.h = spec.h;
        cfg.t_end = spec.t_end;
        cfg.options = solve_options(spec);
        cfg.record_every = every;
        outcome.result = integrate(system, cfg);
    }
    if (spec.reference && outcome.result.stats.all_converged) {
        RunConfig ref;
        ref.k = 10;
        ref.s = 5;
        ref.h = spec.h;
        ref.t_end = spec.t_end;
        ref.options.solver = SolverKind::splitting;
        ref.options.tol = spec.tol;
        const RunResult reference = integrate(system, ref);
        if (reference.stats.all_converged) {
            outcome.result.stats.solution_error = solution_error(outcome.result.trajectory, reference.trajectory);
        }
    }
    return outcome;
}

std::string stats_header() {
    return "method,k,s,h,t_end,solver,mu,tol,steps,outer_iters,inner_iters,ham_err,sol_err,converged";
}

std::string stats_row(const RunSpec& spec, const RunStats& stats) {
    using csv::format_double;
    std::string row(method_name(spec.method));
    const bool hbvm = spec.method == Method::hbvm;
    auto field = [&row](const std::string& value) {
        row += ',';
        row += value;
    };
    field(hbvm ? std::to_string(spec.k) : "");
    field(hbvm ? std::to_string(spec.s) : "");
    field(format_double(spec.h));
    field(format_double(spec.t_end));
    field(hbvm ? std::string(solver_name(spec.solver)) : "explicit");
    field(hbvm && spec.solver == SolverKind::splitting ? std::to_string(spec.mu) : "");
    field(hbvm ? format_double(spec.tol) : "");
    field(std::to_string(stats.steps));
    if (hbvm) {
        field(stats.all_converged ? std::to_string(stats.total_outer_iterations) : "***");
        field(stats.all_converged ? std::to_string(stats.total_inner_iterations) : "***");
        field(format_double(stats.max_hamiltonian_error));
    } else {
        field("");
        field("");
        field(stats.all_converged ? format_double(stats.max_hamiltonian_error) : "***");
    }
    field(stats.solution_error ? format_double(*stats.solution_error) : "");
    field(stats.all_converged ? "1" : "0");
    return row;
}

std::vector<RunSpec> parse_sweep(std::istream& in) {
    std::vector<RunSpec> runs;
    RunSpec defaults;
    std::optional<RunSpec> current;
    std::string line;
    int line_number = 0;
    auto finish = [&](int at) {
        if (!current) return;
        try {
            validate(*current);
        } catch (const SpecError& e) {
            throw SpecError("run ending at line " + std::to_string(at) + ": " + e.what());
        }
        runs.push_back(*current);
    };
    while (std::getline(in, line)) {
        ++line_number;
        std::string_view text = line;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
        text = trim(text);
        if (text.empty()) continue;
        if (text == "[run]") {
            finish(line_number - 1);
            current = defaults;
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) {
            throw SpecError("line " + std::to_string(line_number) + ": expected 'key = value' or '[run]'");
        }
        const std::string_view key = trim(text.substr(0, eq));
        const std::string_view value = trim(text.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw SpecError("line " + std::to_string(line_number) + ": empty key or value");
        }
        try {
            assign(current ? *current : defaults, key, value);
        } catch (const SpecError& e) {
            throw SpecError("line " + std::to_string(line_number) + ": " + e.what());
        }
    }
    finish(line_number);
    return runs;
}

std::vector<std::string> run_sweep(const std::vector<RunSpec>& specs, int jobs, Execution execution) {
    std::vector<std::string> rows(specs.size());
    std::vector<std::string> errors(specs.size());
    const auto n = static_cast<std::ptrdiff_t>(specs.size());
    auto one = [&](std::ptrdiff_t i) {
        try {
            rows[i] = stats_row(specs[i], execute(specs[i]).result.stats);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    };
    if (execution == Execution::parallel && jobs > 1) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
        for (std::ptrdiff_t i = 0; i < n; ++i) one(i);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) one(i);
    }
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!errors[i].empty()) throw std::runtime_error("sweep run " + std::to_string(i + 1) + ": " + errors[i]);
    }
    return rows;
}

}  // namespace hbvm
