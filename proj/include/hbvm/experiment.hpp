#pragma once

// Named benchmark runs, the stats CSV row, and the sweep file format.
//
// A sweep file is a flat list of `key = value` lines. Keys that appear before
// the first `[run]` header set defaults for every run; each `[run]` header
// starts a new configuration that inherits those defaults. Blank lines and
// text after '#' are ignored. Keys: problem, method, k, s, h, t_end, solver,
// mu, tol, max_outer, reference, omega.

#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hbvm/axis_scan.hpp"
#include "hbvm/hamiltonian.hpp"
#include "hbvm/integrator.hpp"

namespace hbvm {

enum class Method { hbvm, composition6 };

struct RunSpec {
    std::string problem = "harmonic";
    Method method = Method::hbvm;
    int k = 2;
    int s = 2;
    double h = 0.1;
    double t_end = 1.0;
    SolverKind solver = SolverKind::splitting;
    int mu = 2;
    double tol = 1e-15;
    int max_outer = 100;
    /// Also integrate HBVM(10,5) on the same grid and report the solution error.
    bool reference = false;
    /// Harmonic oscillator frequency.
    double omega = 1.0;
};

struct RunOutcome {
    RunSpec spec;
    RunResult result;
};

class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// "charged-particle", "fpu" or "harmonic"; throws SpecError otherwise.
HamiltonianSystem make_problem(std::string_view name, double omega = 1.0);

SolverKind parse_solver(std::string_view name);
std::string_view solver_name(SolverKind kind);
Method parse_method(std::string_view name);
std::string_view method_name(Method method);

/// Throws SpecError for inconsistent parameters (k < s, h <= 0, ...).
void validate(const RunSpec& spec);

/// Runs one configuration. With record_every == 0 only the endpoints are kept.
RunOutcome execute(const RunSpec& spec, int record_every = 0);

std::string stats_header();
/// One CSV row (no newline). Non-converged HBVM runs print "***" as their
/// iteration counts; diverged explicit runs print "***" as the energy error.
std::string stats_row(const RunSpec& spec, const RunStats& stats);

/// Throws SpecError with the offending line number.
std::vector<RunSpec> parse_sweep(std::istream& in);

/// Stats rows in spec order. The parallel variant runs up to `jobs`
/// configurations at a time; output is identical to the serial one.
std::vector<std::string> run_sweep(const std::vector<RunSpec>& specs, int jobs, Execution execution);

}  // namespace hbvm
