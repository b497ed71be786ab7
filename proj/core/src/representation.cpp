#include "idde/representation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

#include "idde/fundamental.hpp"
#include "idde/solve.hpp"

namespace idde {

namespace {

double tolerance_at(double x) { return 1e-12 * std::max(1.0, std::abs(x)); }

// Columns of G(., s) keyed by the exact quadrature abscissa.
class ColumnCache {
public:
    ColumnCache(const ProblemSpec& spec, double horizon,
                const MeshOptions& options)
        : spec_(spec), horizon_(horizon), options_(options) {}

    // G(t, s); left side takes the limit over the column start s.
    double G(double t, double s, Side side) const {
        double mult = 1.0;
        if (side == Side::left) {
            // lim_{σ↑s} G(t, σ) picks up the jump at s when s is an impulse
            // time: the limit column equals B_j times the column from s.
            for (std::size_t j = 0; j < spec_.impulses.size(); ++j) {
                if (std::abs(spec_.impulses.points[j] - s) <= tolerance_at(s)) {
                    mult = spec_.impulses.multipliers[j];
                    break;
                }
            }
        }
        if (t <= s + tolerance_at(s)) return mult;  // G(s, s) = 1
        return mult * column(s)(t);
    }

private:
    const PiecewiseSolution& column(double s) const {
        auto it = columns_.find(s);
        if (it == columns_.end())
            it = columns_
                     .emplace(s, std::make_shared<PiecewiseSolution>(
                                     fundamental_function(spec_, s, horizon_,
                                                          options_)))
                     .first;
        return *it->second;
    }

    const ProblemSpec& spec_;
    double horizon_;
    MeshOptions options_;
    mutable std::map<double, std::shared_ptr<PiecewiseSolution>> columns_;
};

// φ(h_i(s)) with the convention φ(ζ) = 0 for ζ >= 0, applied at evaluation.
// Quadrature abscissae can carry rounding dust around the cutoff h_i(s) = 0,
// so the indicator uses a tolerance: exact hits resolve by side.
double history_of_deviated(const ProblemSpec& spec, const DelayTerm& term,
                           double s, Side side) {
    double u = term.delay(s);
    double tol = tolerance_at(s);
    if (u > tol) return 0.0;
    if (u >= -tol)
        return side == Side::left ? spec.history(0.0, Side::left) : 0.0;
    return spec.history(u, side);
}

void sort_dedupe(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end(),
                        [](double a, double b) {
                            return b - a <= tolerance_at(b);
                        }),
            v.end());
}

// Merge near-coincident points; members of `preferred` win as cluster
// representatives so descriptor knots and targets keep their exact doubles.
void sort_dedupe_preferring(std::vector<double>& v,
                            const std::vector<double>& preferred) {
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double p : v) {
        if (!out.empty() && p - out.back() <= tolerance_at(p)) {
            for (double e : preferred)
                if (std::abs(e - p) <= tolerance_at(p)) out.back() = e;
            continue;
        }
        double rep = p;
        for (double e : preferred)
            if (std::abs(e - p) <= tolerance_at(p)) rep = e;
        out.push_back(rep);
    }
    v = std::move(out);
}

}  // namespace

std::vector<double> evaluate_representation(const RepresentationInput& input) {
    const ProblemSpec& spec = input.spec;
    require_valid(spec);
    if (!(input.quadrature_step > 0.0))
        throw std::invalid_argument(
            "representation: quadrature_step must be > 0");
    if (input.target_times.empty()) return {};

    double horizon = 0.0;
    for (double t : input.target_times) {
        if (t < 0.0)
            throw std::invalid_argument("representation: target time below 0");
        horizon = std::max(horizon, t);
    }
    if (horizon == 0.0) horizon = 1.0;

    // G(t, .) is discontinuous at every impulse time; a quadrature step wider
    // than an inter-impulse gap cannot resolve the pieces.
    {
        double prev = 0.0;
        for (double tau : spec.impulses.points) {
            if (tau > horizon) break;
            if (tau - prev < input.quadrature_step - 1e-12)
                throw std::invalid_argument(
                    "representation: quadrature step exceeds an inter-impulse "
                    "gap");
            prev = tau;
        }
    }

    ColumnCache cache(spec, horizon, input.mesh);

    // Split points for the s-integrals: the breakpoint skeleton (impulse
    // times, descriptor knots, forward delay images), every target, and the
    // backward delay iterates of all of these — G(t, .) has derivative kinks
    // along the backward orbit of t and of each breakpoint.
    std::vector<double> splits =
        breakpoint_skeleton(spec, 0.0, horizon, input.mesh.propagation_depth);
    for (double t : input.target_times)
        if (t > 0.0) splits.push_back(t);
    sort_dedupe(splits);
    std::vector<double> preferred = splits;
    std::vector<double> frontier = splits;
    for (int d = 0; d < input.mesh.propagation_depth; ++d) {
        std::vector<double> next;
        for (const auto& term : spec.terms) {
            if (term.delay.is_zero_lag()) continue;
            for (double b : frontier) {
                double img = term.delay(b);
                if (img > tolerance_at(img) && img < horizon) next.push_back(img);
            }
        }
        if (next.empty()) break;
        splits.insert(splits.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    sort_dedupe_preferring(splits, preferred);

    // One shared composite-Simpson grid: pieces between splits, each with an
    // even number of sub-intervals of width <= quadrature_step.  Every target
    // is a piece boundary, so each integral is a whole number of pieces.
    struct Piece {
        double a, b, h;
        std::size_t n;  // even
    };
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i + 1 < splits.size(); ++i) {
        double a = splits[i], b = splits[i + 1];
        if (b - a <= tolerance_at(b)) continue;
        auto n = 2 * static_cast<std::size_t>(std::ceil(
                         (b - a) / (2.0 * input.quadrature_step) - 1e-12));
        if (n < 2) n = 2;
        pieces.push_back({a, b, (b - a) / static_cast<double>(n), n});
    }

    PiecewiseSolution X = fundamental_solution(spec, horizon, input.mesh);

    std::vector<double> results;
    results.reserve(input.target_times.size());
    for (double t : input.target_times) {
        double value = X(t) * spec.initial_value;

        // Jump sum over 0 < τ_j <= t.
        for (std::size_t j = 0; j < spec.impulses.size(); ++j) {
            double tau = spec.impulses.points[j];
            if (tau > t + tolerance_at(t)) break;
            value += cache.G(t, tau, Side::right) * spec.impulses.jumps[j];
        }

        if (t <= tolerance_at(t)) {
            results.push_back(value);
            continue;
        }

        // Combined integrand G(t,s) (r(s) - Σ_i A_i(s) φ(h_i(s))).
        auto integrand = [&](double s, Side side) {
            double f = spec.forcing(s, side);
            for (const auto& term : spec.terms)
                f -= term.coefficient(s, side) *
                     history_of_deviated(spec, term, s, side);
            return cache.G(t, s, side) * f;
        };

        double integral = 0.0;
        for (const Piece& piece : pieces) {
            if (piece.b > t + tolerance_at(t)) break;
            double sum = integrand(piece.a, Side::right) +
                         integrand(piece.b, Side::left);
            for (std::size_t k = 1; k < piece.n; ++k)
                sum += (k % 2 == 1 ? 4.0 : 2.0) *
                       integrand(piece.a + piece.h * static_cast<double>(k),
                                 Side::right);
            integral += sum * piece.h / 3.0;
        }
        value += integral;
        results.push_back(value);
    }
    return results;
}

ResidualReport representation_residual(const ProblemSpec& spec, double horizon,
                                       const MeshOptions& options,
                                       double quadrature_step) {
    require_valid(spec);
    if (!(horizon > 0.0))
        throw std::invalid_argument(
            "representation_residual: horizon must be > 0");

    std::vector<double> targets;
    for (int k = 0; k <= 20; ++k)
        targets.push_back(horizon * static_cast<double>(k) / 20.0);
    for (double tau : spec.impulses.points)
        if (tau <= horizon) targets.push_back(tau);
    sort_dedupe(targets);

    RepresentationInput input;
    input.spec = spec;
    input.target_times = targets;
    input.quadrature_step = quadrature_step;
    input.mesh = options;
    std::vector<double> represented = evaluate_representation(input);

    PiecewiseSolution direct = solve(spec, horizon, options);

    ResidualReport report;
    report.times = targets;
    report.represented = represented;
    report.direct.reserve(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        double d = direct(targets[i]);
        report.direct.push_back(d);
        report.max_abs_error =
            std::max(report.max_abs_error, std::abs(d - represented[i]));
    }
    return report;
}

}  // namespace idde
