#pragma once

#include "idde/mesh.hpp"
#include "idde/problem.hpp"
#include "idde/solution.hpp"

namespace idde {

/// Method-of-steps integration of the impulsive problem on [0, horizon].
/// One classical RK4 step per mesh interval; delayed values come from the
/// already-computed cubic interpolant (history for arguments below 0); the
/// jump x(τ_j) = B_j x(τ_j - 0) + α_j is applied exactly at impulse nodes.
PiecewiseSolution solve(const ProblemSpec& spec, double horizon,
                        const MeshOptions& options = {});

namespace detail {

struct IntegrateSetup {
    double start = 0.0;
    double start_value = 0.0;
    bool homogeneous = false;   // drop r and the additive jumps α_j
    bool zero_history = false;  // reads below `start` return 0
    bool with_impulses = true;  // apply the multipliers at impulse nodes
};

/// Core marcher shared by solve(), the fundamental function and the Cauchy
/// function.  The mesh must start at setup.start.
PiecewiseSolution integrate(const ProblemSpec& spec, const Mesh& mesh,
                            const IntegrateSetup& setup);

}  // namespace detail

}  // namespace idde
