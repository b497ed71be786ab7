#include "idde/io.hpp"

#include <cstdio>

namespace idde {

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_solution_csv(std::ostream& out, const PiecewiseSolution& sol) {
    out << "t,x,is_impulse,left_limit\n";
    const auto& nodes = sol.mesh().nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        bool imp = sol.is_impulse_node(i);
        out << format_full(nodes[i]) << ',' << format_full(sol.value(i)) << ','
            << (imp ? 1 : 0) << ',';
        if (imp) out << format_full(sol.left_value(i));
        out << '\n';
    }
}

void write_table_csv(std::ostream& out, const FundamentalTable& table,
                     std::span<const double> t_grid) {
    out << "s,t,value\n";
    for (std::size_t j = 0; j < table.s_values().size(); ++j) {
        double s = table.s_values()[j];
        for (double t : t_grid)
            out << format_full(s) << ',' << format_full(t) << ','
                << format_full(table(t, j)) << '\n';
    }
}

}  // namespace idde
