#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "idde/descriptor.hpp"

namespace idde {

/// One delayed term A(t) x(h(t)) of the right-hand side.
struct DelayTerm {
    FunctionDescriptor coefficient;   // A(t)
    DeviationDescriptor delay;        // h(t) <= t
};

/// Impulse times τ_1 < τ_2 < ... (all positive) with multipliers B_j and
/// additive jumps α_j: x(τ_j) = B_j x(τ_j - 0) + α_j.
struct ImpulseSchedule {
    std::vector<double> points;
    std::vector<double> multipliers;
    std::vector<double> jumps;

    static ImpulseSchedule none() { return {}; }
    /// jumps default to zeros when omitted.
    static ImpulseSchedule make(std::vector<double> points,
                                std::vector<double> multipliers,
                                std::vector<double> jumps = {});

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
};

/// Full problem description:
///   x'(t) + Σ_i A_i(t) x(h_i(t)) = r(t),  t >= 0,
///   x(ξ) = φ(ξ) for ξ < 0,  x(0) = initial_value,
///   x(τ_j) = B_j x(τ_j - 0) + α_j.
struct ProblemSpec {
    std::vector<DelayTerm> terms;
    FunctionDescriptor forcing;                       // r(t), default 0
    FunctionDescriptor history;                       // φ(ξ), ξ < 0, default 0
    double initial_value = 0.0;                       // x(0)
    ImpulseSchedule impulses;

    bool has_delay() const;   // any term with a non-zero lag
};

/// Structural validation; returns the complete list of violations (empty
/// for a valid spec).  Never mutates the argument.
std::vector<std::string> validate(const ProblemSpec& spec);

/// Throws std::invalid_argument listing every violation; returns the spec
/// unchanged when valid.
const ProblemSpec& require_valid(const ProblemSpec& spec);

}  // namespace idde
