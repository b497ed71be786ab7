#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "idde/fundamental.hpp"
#include "idde/problem.hpp"

namespace idde {

/// A non-empty ordered subset e = {n_1 < ... < n_i} of consecutive impulse
/// indices, with the pair list Λ_e = {(n_i, n_{i-1}), ..., (n_2, n_1)}
/// (empty for singletons).
struct SubsetChain {
    std::vector<int> indices;  // strictly increasing, non-empty

    int min() const { return indices.front(); }
    int max() const { return indices.back(); }
    /// Consecutive pairs, highest first.
    std::vector<std::pair<int, int>> pairs() const;
};

/// All 2^(l-k+1) - 1 non-empty subsets of {k, ..., l}, ordered by size then
/// lexicographically.  Throws for k > l or spans beyond 20 indices.
std::vector<SubsetChain> enumerate_chains(int k, int l);

/// Memoized access to the non-impulsive fundamental function C(t, s).  Each
/// distinct s triggers one numerical column solve; C(u, u) = 1 and
/// C(u, v) = 0 for u < v by construction.
class CauchyEvaluator {
public:
    CauchyEvaluator(ProblemSpec spec, double horizon,
                    const MeshOptions& options = {});

    double operator()(double t, double s) const;

    const ProblemSpec& spec() const { return spec_; }
    double horizon() const { return horizon_; }
    bool has_delay() const { return has_delay_; }

private:
    ProblemSpec spec_;
    double horizon_;
    MeshOptions options_;
    bool has_delay_;
    mutable std::mutex mutex_;
    mutable std::map<double, std::shared_ptr<const PiecewiseSolution>> columns_;
};

/// G(t, s) reconstructed from C by the ordered-subset expansion
///   G(t,s) = C(t,s) + Σ_e C(t, τ_max(e)) [Π (B_{n_p}-1) C(τ_{n_p}, τ_{n_p-1})]
///            (B_min(e) - 1) C(τ_min(e), s)
/// over all chains e between the impulse indices bracketing (s, t].  Returns
/// C(t, s) when no impulse lies in (s, t].  Exponential in the impulse count;
/// capped at 20 impulses inside (s, t].  Requires 0 <= s <= t.
double expansion_G(const CauchyEvaluator& C, const ImpulseSchedule& impulses,
                   double t, double s);

/// Same value by the one-impulse-per-layer recursion
///   G(t,s) = G_l(t,s) + G_l(t,τ_l)(B_l - 1) G_l(τ_l,s),
/// applied index by index; polynomial cost in the impulse count.
double recursion_G(const CauchyEvaluator& C, const ImpulseSchedule& impulses,
                   double t, double s);

/// No-delay product form
///   G(t,s) = C(t, τ_i) [Π_{j=k+1}^i B_j C(τ_j, τ_{j-1})] B_k C(τ_k, s);
/// refuses (std::invalid_argument) when the problem has a genuine delay,
/// where this identity generally fails.
double ode_product_G(const CauchyEvaluator& C, const ImpulseSchedule& impulses,
                     double t, double s);

}  // namespace idde
