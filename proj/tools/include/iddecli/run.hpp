#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace idde::cli {

/// Parsed command line.  Exit codes from run(): 0 success/verified,
/// 1 verification failure, 2 usage or input error.
struct RunConfig {
    std::string command;   // solve | fundamental | cauchy | expand | verify | probe
    std::string variant;   // verify: lemma1|theorem5|representation|positivity|estimate
                           // probe:  bounded|vanishing|exponential
    std::string problem_path;
    double horizon = 0.0;  // required, no default
    double step = 1e-3;
    int depth = 3;
    double qstep = 1e-2;
    double tol = 1e-6;
    double grid_step = 1e-2;
    std::string out_path;  // CSV destination; empty = no CSV
    std::uint64_t seed = 12345;
    int trials = 100;
    double s = 0.0;        // single-column start for fundamental/cauchy
    std::string tgrid;     // "a:b:h"
    std::string sgrid;     // "a:b:h"
};

/// Inclusive grid a, a+h, ..., b from an "a:b:h" string.
std::vector<double> parse_grid(const std::string& text);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace idde::cli
