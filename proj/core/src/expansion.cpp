#include "idde/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace idde {

namespace {

double tolerance_at(double x) { return 1e-12 * std::max(1.0, std::abs(x)); }

// 0-based index window [k, l] of the impulse points inside (s, t]:
// τ_{k-1} <= s < τ_k and τ_l <= t < τ_{l+1}.  k > l means no impulse
// intervenes.
struct IndexWindow {
    int k = 0;
    int l = -1;
    bool empty() const { return k > l; }
};

IndexWindow locate(const ImpulseSchedule& impulses, double t, double s) {
    if (s < 0.0)
        throw std::invalid_argument(
            "expansion: s must be >= 0 (the history region is not covered)");
    if (t < s) throw std::invalid_argument("expansion: need t >= s");
    const auto& pts = impulses.points;
    IndexWindow w;
    w.k = static_cast<int>(
        std::upper_bound(pts.begin(), pts.end(), s) - pts.begin());
    w.l = static_cast<int>(
        std::upper_bound(pts.begin(), pts.end(), t) - pts.begin()) - 1;
    return w;
}

constexpr int kMaxEnumerationSpan = 20;

}  // namespace

std::vector<std::pair<int, int>> SubsetChain::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = indices.size(); i-- > 1;)
        out.emplace_back(indices[i], indices[i - 1]);
    return out;
}

std::vector<SubsetChain> enumerate_chains(int k, int l) {
    if (k > l) throw std::invalid_argument("enumerate_chains: need k <= l");
    int span = l - k + 1;
    if (span > kMaxEnumerationSpan)
        throw std::invalid_argument(
            "enumerate_chains: span exceeds the enumeration cap (20)");

    std::vector<SubsetChain> chains;
    chains.reserve((std::size_t{1} << span) - 1);
    // By size, then lexicographic: the classic next-combination walk.
    for (int size = 1; size <= span; ++size) {
        std::vector<int> combo(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) combo[static_cast<std::size_t>(i)] = k + i;
        while (true) {
            chains.push_back({combo});
            int i = size - 1;
            while (i >= 0 && combo[static_cast<std::size_t>(i)] == l - (size - 1 - i))
                --i;
            if (i < 0) break;
            ++combo[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < size; ++j)
                combo[static_cast<std::size_t>(j)] =
                    combo[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return chains;
}

CauchyEvaluator::CauchyEvaluator(ProblemSpec spec, double horizon,
                                 const MeshOptions& options)
    : spec_(std::move(spec)),
      horizon_(horizon),
      options_(options),
      has_delay_(spec_.has_delay()) {
    require_valid(spec_);
    if (!(horizon > 0.0))
        throw std::invalid_argument("CauchyEvaluator: horizon must be > 0");
}

double CauchyEvaluator::operator()(double t, double s) const {
    if (t < s - tolerance_at(s)) return 0.0;
    if (t <= s + tolerance_at(s)) return 1.0;
    std::shared_ptr<const PiecewiseSolution> col;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = columns_.find(s);
        if (it != columns_.end()) col = it->second;
    }
    if (!col) {
        auto fresh = std::make_shared<const PiecewiseSolution>(
            cauchy_function(spec_, s, horizon_, options_));
        std::lock_guard<std::mutex> lock(mutex_);
        col = columns_.emplace(s, std::move(fresh)).first->second;
    }
    return (*col)(t);
}

double expansion_G(const CauchyEvaluator& C, const ImpulseSchedule& impulses,
                   double t, double s) {
    IndexWindow w = locate(impulses, t, s);
    if (w.empty()) return C(t, s);
    if (w.l - w.k + 1 > kMaxEnumerationSpan)
        throw std::invalid_argument(
            "expansion_G: more than 20 impulses in (s, t]");

    const auto& tau = impulses.points;
    const auto& B = impulses.multipliers;
    double total = C(t, s);
    for (const auto& chain : enumerate_chains(w.k, w.l)) {
        double term = C(t, tau[static_cast<std::size_t>(chain.max())]);
        for (auto [hi, lo] : chain.pairs())
            term *= (B[static_cast<std::size_t>(hi)] - 1.0) *
                    C(tau[static_cast<std::size_t>(hi)],
                      tau[static_cast<std::size_t>(lo)]);
        term *= (B[static_cast<std::size_t>(chain.min())] - 1.0) *
                C(tau[static_cast<std::size_t>(chain.min())], s);
        total += term;
    }
    return total;
}

double recursion_G(const CauchyEvaluator& C, const ImpulseSchedule& impulses,
                   double t, double s) {
    IndexWindow w = locate(impulses, t, s);
    if (w.empty()) return C(t, s);

    // Evaluation points p_0 = s, p_1 = τ_k, ..., p_n = τ_l, p_{n+1} = t, in
    // order.  F starts as C on all pairs; each layer q applies the jump at
    // τ_q to every entry with row time >= τ_q and column time < τ_q.
    const auto& tau = impulses.points;
    const auto& B = impulses.multipliers;
    int n = w.l - w.k + 1;
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(n) + 2);
    times.push_back(s);
    for (int q = w.k; q <= w.l; ++q)
        times.push_back(tau[static_cast<std::size_t>(q)]);
    times.push_back(t);

    std::size_t dim = times.size();
    std::vector<double> F(dim * dim, 0.0);
    auto at = [&](std::size_t row, std::size_t col) -> double& {
        return F[row * dim + col];
    };
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            at(r, c) = r >= c ? C(times[r], times[c]) : 0.0;

    for (int q = 0; q < n; ++q) {
        std::size_t pivot = static_cast<std::size_t>(q) + 1;  // row/col of τ_q
        double factor = B[static_cast<std::size_t>(w.k + q)] - 1.0;
        // Snapshot the pivot row/column of the previous layer.
        std::vector<double> pivot_row(dim), pivot_col(dim);
        for (std::size_t c = 0; c < dim; ++c) pivot_row[c] = at(pivot, c);
        for (std::size_t r = 0; r < dim; ++r) pivot_col[r] = at(r, pivot);
        for (std::size_t r = pivot; r < dim; ++r)
            for (std::size_t c = 0; c < pivot; ++c)
                at(r, c) += pivot_col[r] * factor * pivot_row[c];
    }
    return at(dim - 1, 0);
}

double ode_product_G(const CauchyEvaluator& C, const ImpulseSchedule& impulses,
                     double t, double s) {
    if (C.has_delay())
        throw std::invalid_argument(
            "ode_product_G: the product identity is only valid without delay");
    IndexWindow w = locate(impulses, t, s);
    if (w.empty()) return C(t, s);

    const auto& tau = impulses.points;
    const auto& B = impulses.multipliers;
    double value = C(t, tau[static_cast<std::size_t>(w.l)]);
    for (int j = w.l; j > w.k; --j)
        value *= B[static_cast<std::size_t>(j)] *
                 C(tau[static_cast<std::size_t>(j)],
                   tau[static_cast<std::size_t>(j - 1)]);
    value *= B[static_cast<std::size_t>(w.k)] *
             C(tau[static_cast<std::size_t>(w.k)], s);
    return value;
}

}  // namespace idde
