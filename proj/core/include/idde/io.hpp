#pragma once

#include <ostream>
#include <span>
#include <string>

#include "idde/fundamental.hpp"
#include "idde/solution.hpp"

namespace idde {

/// Full-precision decimal rendering (17 significant digits, '.' separator).
std::string format_full(double v);

/// Columns: t, x, is_impulse, left_limit (left_limit empty off impulses).
void write_solution_csv(std::ostream& out, const PiecewiseSolution& sol);

/// Columns: s, t, value — one row per (column, t-grid) pair.
void write_table_csv(std::ostream& out, const FundamentalTable& table,
                     std::span<const double> t_grid);

}  // namespace idde
