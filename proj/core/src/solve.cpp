#include "idde/solve.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace idde {

namespace {

double hermite_piece(double t, double t0, double t1, double y0, double d0,
                     double y1, double d1) {
    double h = t1 - t0;
    double w = (t - t0) / h;
    double w2 = w * w, w3 = w2 * w;
    return (2 * w3 - 3 * w2 + 1) * y0 + (w3 - 2 * w2 + w) * h * d0 +
           (-2 * w3 + 3 * w2) * y1 + (w3 - w2) * h * d1;
}

// State of the step-by-step march.  Delayed arguments are read from the
// already-computed prefix: node hits resolve to the stored one-sided values
// (the side is the limit direction of s -> x(h(s)) at the stage time, so the
// right-endpoint stage of a step ending where h lands on an impulse node
// reads the pre-jump value); interior arguments use the per-interval cubic
// Hermite.  Arguments equal to the stage time (zero lag) use the stage state,
// which reduces the scheme to classical RK4 for undelayed terms.
class Marcher {
public:
    Marcher(const ProblemSpec& spec, const Mesh& mesh,
            const detail::IntegrateSetup& setup)
        : spec_(spec), mesh_(mesh), setup_(setup) {
        std::size_t n = mesh.size();
        values_.assign(n, 0.0);
        left_values_.assign(n, 0.0);
        dright_.assign(n, 0.0);
        dleft_.assign(n, 0.0);
    }

    PiecewiseSolution run() {
        values_[0] = setup_.start_value;
        // The left limit at the start node is the history limit, so reads of
        // x(h(t) - 0) that land exactly on the start see the pre-start side.
        left_values_[0] = setup_.zero_history
                              ? 0.0
                              : spec_.history(mesh_.start(), Side::left);
        std::size_t n = mesh_.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            double a = mesh_.nodes[i], b = mesh_.nodes[i + 1];
            double h = b - a;
            double y = values_[i];
            double k1 = rhs(a, y, Side::right, i);
            dright_[i] = k1;
            double k2 = rhs(a + 0.5 * h, y + 0.5 * h * k1, Side::right, i);
            double k3 = rhs(a + 0.5 * h, y + 0.5 * h * k2, Side::right, i);
            double k4 = rhs(b, y + h * k3, Side::left, i);
            double y_left = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            left_values_[i + 1] = y_left;
            dleft_[i + 1] = rhs(b, y_left, Side::left, i);

            int j = mesh_.impulse_index[i + 1];
            if (j >= 0 && setup_.with_impulses) {
                double alpha =
                    setup_.homogeneous ? 0.0 : spec_.impulses.jumps[j];
                values_[i + 1] =
                    spec_.impulses.multipliers[j] * y_left + alpha;
            } else {
                values_[i + 1] = y_left;
            }
        }
        dright_[n - 1] = rhs(mesh_.end(), values_[n - 1], Side::right, n - 1);
        return PiecewiseSolution(mesh_, std::move(values_),
                                 std::move(left_values_), std::move(dright_),
                                 std::move(dleft_), spec_.history,
                                 setup_.zero_history);
    }

private:
    double rhs(double t, double y, Side side, std::size_t interval) {
        double value = setup_.homogeneous ? 0.0 : spec_.forcing(t, side);
        for (const auto& term : spec_.terms) {
            double u = term.delay(t);
            value -= term.coefficient(t, side) *
                     delayed(u, t, y, side, interval);
        }
        return value;
    }

    double delayed(double u, double t_stage, double y_stage, Side side,
                   std::size_t interval) {
        double tol = 1e-12 * std::max(1.0, std::abs(t_stage));
        if (u >= t_stage - tol) return y_stage;  // zero lag at this stage
        double start = mesh_.start();
        if (u < start - tol)
            return setup_.zero_history ? 0.0 : spec_.history(u, side);

        std::size_t node = mesh_.node_at(u);
        if (node != Mesh::npos && node <= interval)
            return side == Side::right ? values_[node] : left_values_[node];

        std::size_t j = mesh_.interval_of(u);
        if (j < interval)
            return hermite_piece(u, mesh_.nodes[j], mesh_.nodes[j + 1],
                                 values_[j], dright_[j], left_values_[j + 1],
                                 dleft_[j + 1]);
        // Lag shorter than the current step: extrapolate the last completed
        // piece (first step: constant continuation of the start value).
        if (interval == 0) return values_[0];
        std::size_t p = interval - 1;
        return hermite_piece(u, mesh_.nodes[p], mesh_.nodes[p + 1], values_[p],
                             dright_[p], left_values_[p + 1], dleft_[p + 1]);
    }

    const ProblemSpec& spec_;
    const Mesh& mesh_;
    const detail::IntegrateSetup& setup_;
    std::vector<double> values_, left_values_, dright_, dleft_;
};

}  // namespace

namespace detail {

PiecewiseSolution integrate(const ProblemSpec& spec, const Mesh& mesh,
                            const IntegrateSetup& setup) {
    return Marcher(spec, mesh, setup).run();
}

}  // namespace detail

PiecewiseSolution solve(const ProblemSpec& spec, double horizon,
                        const MeshOptions& options) {
    require_valid(spec);
    if (!(horizon > 0.0))
        throw std::invalid_argument("solve: horizon must be > 0");
    Mesh mesh = build_mesh(spec, horizon, options);
    detail::IntegrateSetup setup;
    setup.start = 0.0;
    setup.start_value = spec.initial_value;
    return detail::integrate(spec, mesh, setup);
}

}  // namespace idde
