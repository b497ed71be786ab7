#pragma once

#include <array>
#include <optional>
#include <string>

#include "idde/problem.hpp"

namespace idde {

struct HypothesisVerdict {
    bool pass = true;
    bool horizon_limited = false;  // verdict holds on [0, horizon] only
    std::string note;
};

/// Verdicts for the structural hypotheses (a1)-(a9) over a finite horizon,
/// together with the constants they assert to exist.  Constants are the
/// empirical extrema over [0, horizon]; extending the horizon never
/// decreases M, Q, sigma and never increases rho.
struct HypothesisReport {
    double horizon = 0.0;
    std::array<HypothesisVerdict, 9> verdicts;  // [0] = (a1), ..., [8] = (a9)

    std::optional<double> rho;     // (a6) min gap between consecutive impulse times (0 = τ_0 included)
    std::optional<double> sigma;   // (a7) max gap
    double M = 0.0;                // (a5) sup |B_j| over points <= horizon
    double delta = 0.0;            // (a8) max observed lag t - h_i(t)
    double Q_from_0 = 0.0;         // (a9) max unit-interval mass, intervals [k, k+1], k = 0, 1, ...
    double Q_from_1 = 0.0;         // (a9) same with k = 1, 2, ... (the displayed reading)

    const HypothesisVerdict& verdict(int a) const { return verdicts.at(a - 1); }
    bool all_pass() const;
};

/// Checks (a1)-(a9) over [0, horizon].  Requires a validated spec and
/// horizon > 0 (throws std::invalid_argument otherwise).
HypothesisReport check_hypotheses(const ProblemSpec& spec, double horizon);

}  // namespace idde
