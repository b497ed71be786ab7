#pragma once

#include <vector>

#include "idde/problem.hpp"
#include "idde/solution.hpp"

namespace idde {

/// Inputs for the variation-of-constants evaluation
///   x(t) = X(t) x(0) + ∫_0^t G(t,s) r(s) ds
///          - Σ_i ∫_0^t G(t,s) A_i(s) φ(h_i(s)) ds
///          + Σ_{0 < τ_j <= t} G(t, τ_j) α_j,
/// with φ(ζ) treated as 0 for ζ >= 0.  Integrals use composite Simpson on a
/// breakpoint-split grid (G(t, .) and φ(h_i(.)) are only piecewise smooth).
struct RepresentationInput {
    ProblemSpec spec;
    std::vector<double> target_times;
    double quadrature_step = 1e-2;
    MeshOptions mesh;
};

/// Values of the right-hand side of the representation at the target times.
/// Refuses (std::invalid_argument) when quadrature_step exceeds the smallest
/// inter-impulse gap: G is discontinuous in s at impulse points.
std::vector<double> evaluate_representation(const RepresentationInput& input);

struct ResidualReport {
    double max_abs_error = 0.0;
    std::vector<double> times;
    std::vector<double> direct;       // solve() at the target times
    std::vector<double> represented;  // representation formula at the targets
};

/// Max discrepancy |representation - direct solve| over a default grid of
/// targets (impulse points plus an even spread over [0, horizon]).
ResidualReport representation_residual(const ProblemSpec& spec, double horizon,
                                       const MeshOptions& options = {},
                                       double quadrature_step = 1e-2);

}  // namespace idde
