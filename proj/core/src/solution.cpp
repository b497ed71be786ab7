#include "idde/solution.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace idde {

namespace {

// Cubic Hermite on [t0, t1] with endpoint values/derivatives taken from the
// correct one-sided limits of the interval.
double hermite(double t, double t0, double t1, double y0, double d0, double y1,
               double d1) {
    double h = t1 - t0;
    double w = (t - t0) / h;
    double w2 = w * w, w3 = w2 * w;
    return (2 * w3 - 3 * w2 + 1) * y0 + (w3 - 2 * w2 + w) * h * d0 +
           (-2 * w3 + 3 * w2) * y1 + (w3 - w2) * h * d1;
}

}  // namespace

PiecewiseSolution::PiecewiseSolution(Mesh mesh, std::vector<double> values,
                                     std::vector<double> left_values,
                                     std::vector<double> deriv_right,
                                     std::vector<double> deriv_left,
                                     FunctionDescriptor history,
                                     bool zero_history)
    : mesh_(std::move(mesh)),
      values_(std::move(values)),
      left_values_(std::move(left_values)),
      deriv_right_(std::move(deriv_right)),
      deriv_left_(std::move(deriv_left)),
      history_(std::move(history)),
      zero_history_(zero_history) {}

double PiecewiseSolution::operator()(double t, Side side) const {
    double start = mesh_.start(), end = mesh_.end();
    double tol = 1e-12 * std::max(1.0, std::abs(t));
    if (t < start - tol) return zero_history_ ? 0.0 : history_(t, side);
    if (t > end + tol)
        throw std::out_of_range("PiecewiseSolution: query beyond computed range");

    std::size_t node = mesh_.node_at(t);
    if (node != Mesh::npos)
        return side == Side::right ? values_[node] : left_values_[node];

    std::size_t i = mesh_.interval_of(t);
    return hermite(t, mesh_.nodes[i], mesh_.nodes[i + 1], values_[i],
                   deriv_right_[i], left_values_[i + 1], deriv_left_[i + 1]);
}

std::vector<SignChange> sign_changes(const PiecewiseSolution& sol,
                                     double width) {
    std::vector<SignChange> out;
    const auto& nodes = sol.mesh().nodes;
    auto sgn = [](double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); };

    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        // Jump through zero at the impulse node itself.
        if (sol.is_impulse_node(i) &&
            sgn(sol.left_value(i)) * sgn(sol.value(i)) < 0)
            out.push_back({nodes[i], nodes[i]});

        double a = nodes[i], b = nodes[i + 1];
        double va = sol.value(i), vb = sol.left_value(i + 1);
        if (sgn(va) * sgn(vb) >= 0) continue;
        // Bisection on the interpolant.
        while (b - a > width) {
            double mid = 0.5 * (a + b);
            double vm = sol(mid);
            if (sgn(vm) == sgn(va)) {
                a = mid;
                va = vm;
            } else {
                b = mid;
                vb = vm;
            }
        }
        out.push_back({a, b});
    }
    std::size_t last = nodes.size() - 1;
    if (sol.is_impulse_node(last) &&
        sgn(sol.left_value(last)) * sgn(sol.value(last)) < 0)
        out.push_back({nodes[last], nodes[last]});
    return out;
}

}  // namespace idde
