#pragma once

#include <cstdint>
#include <vector>

#include "idde/problem.hpp"

namespace idde {

struct MeshOptions {
    double base_step = 1e-3;
    int propagation_depth = 3;
};

/// Breakpoint-aligned integration mesh on [start, end].  Nodes contain every
/// impulse time in (start, end], every coefficient/forcing breakpoint, and
/// the delay-propagated images of all of these, then a uniform refinement to
/// at most base_step spacing per gap.
struct Mesh {
    std::vector<double> nodes;                 // strictly increasing
    std::vector<std::int32_t> impulse_index;   // per node: schedule index or -1

    double start() const { return nodes.front(); }
    double end() const { return nodes.back(); }
    std::size_t size() const { return nodes.size(); }

    /// Index i with nodes[i] <= t < nodes[i+1]; the last interval also claims
    /// t == end.  t must lie within [start, end].
    std::size_t interval_of(double t) const;

    /// Index of a node equal to t within a tight tolerance, or npos.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t node_at(double t) const;
};

/// Breakpoints of [start, end] before refinement: window ends, impulse
/// points, descriptor knots, and their delay images iterated `depth` times.
std::vector<double> breakpoint_skeleton(const ProblemSpec& spec, double start,
                                        double end, int depth);

Mesh build_mesh(const ProblemSpec& spec, double horizon,
                const MeshOptions& options = {});
Mesh build_mesh_window(const ProblemSpec& spec, double start, double horizon,
                       const MeshOptions& options = {});

}  // namespace idde
