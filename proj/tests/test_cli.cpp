#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "common.hpp"
#include "doctest.h"
#include "iddecli/problem_file.hpp"
#include "iddecli/run.hpp"

using namespace idde;
using namespace idde::cli;
namespace fs = std::filesystem;

namespace {

const char* kReferenceProblem = R"(# delayed decay with sixth-multiplier impulses
initial_value = 1.0
term.coefficient = constant 1.0
term.delay = lag 0.3333333333333333
impulses.points = [0.3333333333333333, 0.6666666666666666, 1.0]
impulses.multipliers = [0.16666666666666666, 0.16666666666666666, 0.16666666666666666]
)";

struct TempFile {
    fs::path path;
    explicit TempFile(const std::string& contents, const char* name) {
        path = fs::temp_directory_path() / name;
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::error_code ec; fs::remove(path, ec); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool mentions(const std::vector<std::string>& errors, const std::string& s) {
    for (const auto& e : errors)
        if (e.find(s) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("parses the reference problem file") {
    ProblemSpec spec = parse_problem_file(kReferenceProblem);
    REQUIRE(spec.terms.size() == 1);
    CHECK(spec.terms[0].delay.lag() == doctest::Approx(1.0 / 3.0));
    REQUIRE(spec.impulses.size() == 3);
    CHECK(spec.impulses.multipliers[0] == doctest::Approx(1.0 / 6.0));
    CHECK(spec.initial_value == 1.0);
    CHECK(validate(spec).empty());
}

TEST_CASE("empty file reports the missing initial value") {
    try {
        parse_problem_file("");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(mentions(e.errors(), "missing initial_value"));
    }
}

TEST_CASE("unordered impulse points carry the line number") {
    const char* text =
        "initial_value = 1\n"
        "impulses.points = [0.5, 0.2]\n"
        "impulses.multipliers = [1.0, 1.0]\n";
    try {
        parse_problem_file(text);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(mentions(e.errors(), "line 2"));
        CHECK(mentions(e.errors(), "points not strictly increasing"));
    }
}

TEST_CASE("unknown keys and malformed lists carry line numbers") {
    try {
        parse_problem_file("initial_value = 1\nwhatever = 3\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(mentions(e.errors(), "line 2"));
        CHECK(mentions(e.errors(), "unknown key"));
    }
    try {
        parse_problem_file("initial_value = 1\nimpulses.points = [1, oops]\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(mentions(e.errors(), "line 2"));
        CHECK(mentions(e.errors(), "malformed"));
    }
}

TEST_CASE("function and deviation syntax round-trips") {
    const char* text =
        "initial_value = 0.5\n"
        "forcing = pwc 1.0 2.0 -1.0\n"
        "history = table 0.0 1.0 2.0 3.0\n"
        "term.coefficient = constant 0.4\n"
        "term.delay = table 0.0 -1.0 5.0 2.0\n";
    ProblemSpec spec = parse_problem_file(text);
    CHECK(spec.forcing(1.0) == doctest::Approx(1.0));
    CHECK(spec.forcing(2.5) == doctest::Approx(-1.0));
    CHECK(spec.history(1.0) == doctest::Approx(2.0));
    CHECK(spec.terms[0].delay(2.5) == doctest::Approx(0.5));
}

TEST_CASE("grid strings parse inclusively") {
    auto grid = parse_grid("0:1:0.25");
    REQUIRE(grid.size() == 5);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 1.0);
}

TEST_CASE("solve command writes deterministic CSV and exits zero") {
    TempFile problem(kReferenceProblem, "idde_cli_ref.prob");
    fs::path out1 = fs::temp_directory_path() / "idde_out1.csv";
    fs::path out2 = fs::temp_directory_path() / "idde_out2.csv";

    RunConfig config;
    config.command = "solve";
    config.problem_path = problem.path.string();
    config.horizon = 1.0;
    config.out_path = out1.string();
    std::ostringstream out, err;
    CHECK(run(config, out, err) == 0);
    config.out_path = out2.string();
    CHECK(run(config, out, err) == 0);

    std::string a = slurp(out1), b = slurp(out2);
    CHECK(!a.empty());
    CHECK(a == b);
    CHECK(a.rfind("t,x,is_impulse,left_limit\n", 0) == 0);
    fs::remove(out1);
    fs::remove(out2);
}

TEST_CASE("verify positivity: reference equation passes, exit 0") {
    TempFile problem(kReferenceProblem, "idde_cli_pos.prob");
    RunConfig config;
    config.command = "verify";
    config.variant = "positivity";
    config.problem_path = problem.path.string();
    config.horizon = 2.0;
    std::ostringstream out, err;
    CHECK(run(config, out, err) == 0);
    CHECK(out.str().find("result = pass") != std::string::npos);
}

TEST_CASE("fundamental command brackets the sign change") {
    TempFile problem(kReferenceProblem, "idde_cli_fund.prob");
    fs::path csv = fs::temp_directory_path() / "idde_fund.csv";
    RunConfig config;
    config.command = "fundamental";
    config.problem_path = problem.path.string();
    config.horizon = 1.0;
    config.out_path = csv.string();
    std::ostringstream out, err;
    CHECK(run(config, out, err) == 0);
    CHECK(out.str().find("sign_change[s=0] = 0.49999") != std::string::npos);
    CHECK(slurp(csv).rfind("s,t,value\n", 0) == 0);
    fs::remove(csv);
}

TEST_CASE("verify theorem5 passes on a delayed impulsive problem") {
    const char* text =
        "initial_value = 1\n"
        "term.coefficient = constant 0.5\n"
        "term.delay = lag 0.3\n"
        "impulses.points = [0.9, 1.7, 2.6]\n"
        "impulses.multipliers = [1.4, 0.7, 1.2]\n";
    TempFile problem(text, "idde_cli_th5.prob");
    RunConfig config;
    config.command = "verify";
    config.variant = "theorem5";
    config.problem_path = problem.path.string();
    config.horizon = 3.5;
    config.tol = 1e-5;
    std::ostringstream out, err;
    CHECK(run(config, out, err) == 0);
}

TEST_CASE("exit codes: 1 on verification failure, 2 on usage errors") {
    TempFile problem(kReferenceProblem, "idde_cli_codes.prob");
    const char* wide =
        "initial_value = 1\n"
        "term.coefficient = constant 1.0\n"
        "term.delay = lag 0.5\n";  // functional 0.5 > 1/e: inconclusive
    TempFile inconclusive(wide, "idde_cli_wide.prob");
    RunConfig failing;
    failing.command = "verify";
    failing.variant = "positivity";
    failing.problem_path = inconclusive.path.string();
    failing.horizon = 2.0;
    std::ostringstream out, err;
    CHECK(run(failing, out, err) == 1);

    RunConfig missing;
    missing.command = "solve";
    missing.problem_path = "/nonexistent/file.prob";
    missing.horizon = 1.0;
    CHECK(run(missing, out, err) == 2);

    RunConfig badcmd;
    badcmd.command = "dance";
    badcmd.problem_path = problem.path.string();
    badcmd.horizon = 1.0;
    CHECK(run(badcmd, out, err) == 2);

    RunConfig nohorizon;
    nohorizon.command = "solve";
    nohorizon.problem_path = problem.path.string();
    nohorizon.horizon = 0.0;
    CHECK(run(nohorizon, out, err) == 2);
}

TEST_CASE("probe command is seed-deterministic") {
    const char* text =
        "initial_value = 1\n"
        "term.coefficient = constant 0.5\n"
        "term.delay = lag 0.3\n"
        "impulses.points = [1, 2, 3, 4]\n"
        "impulses.multipliers = [1.5, 1.5, 1.5, 1.5]\n";
    TempFile problem(text, "idde_cli_probe.prob");
    RunConfig config;
    config.command = "probe";
    config.variant = "bounded";
    config.problem_path = problem.path.string();
    config.horizon = 5.0;
    config.trials = 5;
    config.seed = 31337;
    std::ostringstream out1, out2, err;
    CHECK(run(config, out1, err) == 0);
    CHECK(run(config, out2, err) == 0);
    CHECK(out1.str() == out2.str());
}

}  // TEST_SUITE
