#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "idde/problem.hpp"
#include "idde/solution.hpp"

namespace idde {

struct PositivityResult {
    bool pass = false;            // max_functional <= 1/e (certificate for C > 0)
    double max_functional = 0.0;  // max over the grid of Σ_i ∫_{h_i^+(t)}^t A_i^+(s) ds
    double threshold = 0.0;       // 1/e
    double argmax_t = 0.0;
};

/// The 1/e test: pass certifies C(t, s) > 0; failure is only inconclusive
/// (the condition is sufficient, not necessary).  Integrals of the positive
/// part are exact per descriptor piece.
PositivityResult positivity_test(const ProblemSpec& spec, double horizon,
                                 double grid_step);

struct KEstimate {
    bool hypotheses_met = false;  // G >= 0 (and X > 0) on the computed grid
    double k = 0.0;               // max over the grid of Σ_{0 < τ_i <= t} G(t, τ_i), floored at 1 + ε
    double argmax_t = 0.0;
    std::string note;
};

/// Floor applied to k: the theory assumes k > 1 without loss of generality.
inline constexpr double k_floor_epsilon = 1e-6;

/// Empirical k over a t-grid; a horizon-limited lower estimate of the true
/// sup.  Negative computed G (or non-positive X) is reported as
/// hypotheses-not-met, not as a numeric result.
KEstimate estimate_k(const ProblemSpec& spec, double horizon,
                     std::span<const double> t_grid,
                     const MeshOptions& options = {});

enum class EstimateProvenance { theorem2, theorem3, fitted };

struct EstimateReport {
    double k = 0.0;
    double sigma = 0.0;
    double nu = 0.0;   // ln[k/(k-1)] / sigma for the theorem provenances
    double N = 0.0;
    double horizon = 0.0;
    EstimateProvenance provenance = EstimateProvenance::theorem2;
};

/// ν = ln[k/(k-1)]/σ and N = max{ X(τ_1) k³/(k-1)², sup_{0<=t<=τ_1} e^{νt} X(t) }
/// with the boundary sup supplied by the caller.  Requires k > 1, σ > 0.
EstimateReport exponential_constants(double k, double sigma, double X_tau1,
                                     double boundary_sup);

/// sup over [0, tau1] of e^{νt} |X(t)| on the computed nodes (left limits
/// included) — the second argument of the N formula above.
double boundary_sup(const PiecewiseSolution& X, double nu, double tau1);

/// Same ν; N = max{ (1+M) e^{mQσ} k³/(k-1)², (1+M) e^{σ(ν + mQ)} }.
EstimateReport theorem3_constants(double k, double sigma, double M, double Q,
                                  int m);

/// Upper bound (1 + |B_p|) exp(∫_s^t Σ_i |A_i|) for |G(t, s)| inside one
/// inter-impulse interval τ_{p-1} < s <= t <= τ_p.  Throws when s, t straddle
/// an impulse point or lie beyond the last one.
double gronwall_bound(const ProblemSpec& spec, double s, double t);

struct VerifyResult {
    bool pass = false;
    double worst_margin = 0.0;  // min over the grid of bound + tol - |value|
    double worst_t = 0.0, worst_s = 0.0;
};

/// Checks |X(t)| <= N e^{-νt} (theorem2/fitted provenance) at every grid
/// point, or |G(t,s)| <= N e^{-ν(t-s)} over all grid pairs s <= t (theorem3),
/// with additive tolerance.
VerifyResult verify_exponential_estimate(const ProblemSpec& spec,
                                         const EstimateReport& report,
                                         double horizon,
                                         std::span<const double> grid,
                                         double tolerance = 1e-8,
                                         const MeshOptions& options = {});

enum class InputClass { bounded, vanishing, exponential };

struct ProbeOptions {
    int trials = 50;
    double horizon = 10.0;
    std::uint64_t seed = 12345;
    double P = 1.0;      // exponential class: |α_n| <= P e^{-λ n}, |r| <= P e^{-λ t}
    double lambda = 1.0;
    MeshOptions mesh;
};

struct ProbeResult {
    InputClass input_class = InputClass::bounded;
    std::uint64_t seed = 0;
    int trials = 0;
    double sup_abs = 0.0;    // over all trials and nodes (left limits included)
    double tail_sup = 0.0;   // over the last 20% of the horizon
    std::optional<std::pair<double, double>> fitted;  // (P0, λ0) envelope fit
    bool verdict = false;
    std::vector<double> per_trial_sup;
    std::vector<double> per_trial_x0;         // |x(0)| drawn for each trial
    std::vector<double> per_trial_sup_r;      // sup |r| per trial
    std::vector<double> per_trial_sup_alpha;  // sup |α_j| per trial
};

/// Randomized forcing/jump/initial-value trials on the spec's structure.
/// bounded: |x0|, |α_j|, |r| <= 1;  vanishing: α_n = c_n/(n+1), r = c(t)/(t+1);
/// exponential: |α_n| <= P e^{-λn}, |r(t)| <= P e^{-λt}.  The exponential
/// fit is the log-linear fit of the per-node trial-maximum envelope past the
/// first impulse (single solutions cross zero; the envelope does not).
ProbeResult input_probe(const ProblemSpec& spec, InputClass input_class,
                        const ProbeOptions& options = {});

struct DecayFit {
    double N_fit = 0.0;
    double nu_fit = 0.0;
};

/// Least-squares line through (t, ln|value|) over samples above the floor
/// (1e-12 practical, 1e-300 hard guard).  Requires at least 10 usable
/// samples (std::invalid_argument otherwise).
DecayFit fit_decay(std::span<const std::pair<double, double>> samples);

}  // namespace idde
