#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "idde/problem.hpp"

namespace idde::cli {

/// Carries the complete list of parse/validation problems, each prefixed
/// with its line number where one applies.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const { return errors_; }

private:
    std::vector<std::string> errors_;
};

/// Line-oriented problem format (see the repository README):
///   initial_value = <real>                     (required)
///   forcing = constant <v> | pwc <v0> [<t> <v>]... | table <t> <v> ...
///   history = ... (same function syntax)
///   term.coefficient = <function>              (opens a new term)
///   term.delay = lag <d> | table <t> <h> ...   (attaches to the open term)
///   impulses.points = [<t1>, <t2>, ...]
///   impulses.multipliers = [<b1>, ...]
///   impulses.jumps = [<a1>, ...]               (defaults to zeros)
/// `#` starts a comment.  Throws ParseError with line-numbered messages;
/// structural validation failures are forwarded.
idde::ProblemSpec parse_problem_file(std::string_view text);

/// Reads and parses the file at `path`.
idde::ProblemSpec load_problem_file(const std::string& path);

}  // namespace idde::cli
