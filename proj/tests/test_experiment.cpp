#include <doctest.h>

#include <sstream>

#include "hbvm/csv.hpp"
#include "hbvm/experiment.hpp"

using namespace hbvm;

TEST_CASE("number formatting") {
    CHECK(csv::format_double(0.1) == "0.10000000000000001");
    CHECK(csv::format_double(1000.0) == "1000");
    CHECK(csv::format_double(-2.5e-17) == "-2.4999999999999999e-17");
    CHECK(csv::format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(csv::format_double(std::nan("")) == "nan");
}

TEST_CASE("trajectory CSV is deterministic") {
    RunSpec spec;
    spec.problem = "charged-particle";
    spec.k = 4;
    spec.h = 0.1;
    spec.t_end = 2.0;
    auto render = [&] {
        std::ostringstream os;
        csv::write_trajectory(os, execute(spec, 1).result.trajectory);
        return os.str();
    };
    const std::string first = render();
    CHECK(first == render());
    CHECK(first.rfind("t,y_1,y_2,y_3,y_4,y_5,y_6\n", 0) == 0);
    CHECK(first.find('\r') == std::string::npos);
    CHECK(std::count(first.begin(), first.end(), '\n') == 22);
    std::ostringstream empty;
    csv::write_trajectory(empty, Trajectory{});
    CHECK(empty.str() == "t\n");
}

TEST_CASE("stats rows") {
    RunSpec spec;
    spec.problem = "fpu";
    spec.k = 6;
    spec.s = 3;
    spec.h = 5e-4;
    spec.t_end = 10.0;
    spec.solver = SolverKind::fixed_point;
    const std::string failed = stats_row(spec, execute(spec).result.stats);
    CHECK(failed.find(",fixed-point,,") != std::string::npos);
    CHECK(failed.find(",***,***,") != std::string::npos);
    CHECK(failed.back() == '0');

    RunSpec ok;
    ok.problem = "harmonic";
    ok.h = 0.5;
    ok.t_end = 2.0;
    ok.reference = true;
    const std::string row = stats_row(ok, execute(ok).result.stats);
    CHECK(row.rfind("hbvm,2,2,0.5,2,splitting,2,", 0) == 0);
    CHECK(row.back() == '1');
    const auto commas = std::count(row.begin(), row.end(), ',');
    const std::string header = stats_header();
    CHECK(commas == std::count(header.begin(), header.end(), ','));
    // the solution error field is filled when a reference is requested
    CHECK(row.find(",,") == std::string::npos);

    RunSpec comp;
    comp.problem = "fpu";
    comp.method = Method::composition6;
    comp.h = 5e-4;
    comp.t_end = 1.0;
    const std::string diverged = stats_row(comp, execute(comp).result.stats);
    CHECK(diverged.rfind("composition6,,,", 0) == 0);
    CHECK(diverged.find(",explicit,") != std::string::npos);
    CHECK(diverged.find(",***,") != std::string::npos);
}

TEST_CASE("sweep file parsing") {
    std::istringstream in(R"(# defaults
problem = charged-particle
h = 0.1
t_end = 1   # short

[run]
k = 2
[run]
k = 4
solver = fixed-point
[run]
problem = fpu
k = 6
s = 3
mu = 3
tol = 1e-12
max_outer = 50
reference = true
)");
    const std::vector<RunSpec> runs = parse_sweep(in);
    REQUIRE(runs.size() == 3);
    CHECK(runs[0].problem == "charged-particle");
    CHECK(runs[0].k == 2);
    CHECK(runs[0].t_end == 1.0);
    CHECK(runs[1].solver == SolverKind::fixed_point);
    CHECK(runs[2].problem == "fpu");
    CHECK(runs[2].s == 3);
    CHECK(runs[2].mu == 3);
    CHECK(runs[2].tol == 1e-12);
    CHECK(runs[2].max_outer == 50);
    CHECK(runs[2].reference);
    CHECK(runs[2].solver == SolverKind::splitting);

    std::istringstream empty("# nothing\n\n");
    CHECK(parse_sweep(empty).empty());

    auto fails = [](const std::string& text) {
        std::istringstream bad(text);
        CHECK_THROWS_AS(parse_sweep(bad), SpecError);
    };
    fails("[run]\nk = two\n");
    fails("[run]\nbogus = 1\n");
    fails("[run]\nk\n");
    fails("[run]\nk = 1\ns = 2\n");
    fails("[run]\nproblem = pendulum\n");
    fails("[run]\nsolver = jacobi\n");
    fails("[run]\nh = -1\n");
    fails("[run]\nmethod = composition6\nproblem = charged-particle\n");
    std::istringstream located("[run]\nk = 2\nh = x\n");
    try {
        parse_sweep(located);
        FAIL("expected an error");
    } catch (const SpecError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("parallel sweep equals the serial sweep") {
    std::vector<RunSpec> specs;
    for (int k : {2, 4, 6}) {
        for (SolverKind solver : {SolverKind::fixed_point, SolverKind::splitting, SolverKind::simplified_newton}) {
            RunSpec spec;
            spec.problem = "charged-particle";
            spec.k = k;
            spec.t_end = 3.0;
            spec.solver = solver;
            specs.push_back(spec);
        }
    }
    const std::vector<std::string> serial = run_sweep(specs, 1, Execution::serial);
    const std::vector<std::string> parallel = run_sweep(specs, 4, Execution::parallel);
    REQUIRE(serial.size() == specs.size());
    CHECK(serial == parallel);
    CHECK(run_sweep({}, 4, Execution::parallel).empty());
}

TEST_CASE("problem and name lookup") {
    CHECK(make_problem("fpu").dimension() == 28);
    CHECK(make_problem("harmonic", 3.0).energy(Eigen::Vector2d(1.0, 0.0)) == 4.5);
    CHECK_THROWS_AS(make_problem("pendulum"), SpecError);
    for (SolverKind kind : {SolverKind::fixed_point, SolverKind::simplified_newton, SolverKind::splitting}) {
        CHECK(parse_solver(solver_name(kind)) == kind);
    }
    CHECK(parse_method(method_name(Method::composition6)) == Method::composition6);
}
