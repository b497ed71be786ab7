#include "idde/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace idde {

namespace {

constexpr double kMergeTol = 1e-12;

double merge_tol(double x) { return kMergeTol * std::max(1.0, std::abs(x)); }

// Sorts and merges points that coincide up to rounding.  Points listed in
// `exact` (impulse times) win as cluster representatives so the schedule's
// doubles survive bit-exactly.
std::vector<double> dedupe(std::vector<double> pts,
                           const std::vector<double>& exact) {
    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    for (double p : pts) {
        if (!out.empty() && p - out.back() <= merge_tol(p)) {
            for (double e : exact)
                if (std::abs(e - p) <= merge_tol(p)) out.back() = e;
            continue;
        }
        double rep = p;
        for (double e : exact)
            if (std::abs(e - p) <= merge_tol(p)) rep = e;
        out.push_back(rep);
    }
    return out;
}

}  // namespace

std::size_t Mesh::interval_of(double t) const {
    auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
    std::size_t i = static_cast<std::size_t>(it - nodes.begin());
    if (i == 0) return 0;
    if (i >= nodes.size()) return nodes.size() - 2;
    return i - 1;
}

std::size_t Mesh::node_at(double t) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), t);
    for (auto cand : {it, it == nodes.begin() ? it : it - 1}) {
        if (cand != nodes.end() && std::abs(*cand - t) <= merge_tol(t))
            return static_cast<std::size_t>(cand - nodes.begin());
    }
    return npos;
}

std::vector<double> breakpoint_skeleton(const ProblemSpec& spec, double start,
                                        double end, int depth) {
    std::vector<double> impulse_times;
    for (double tau : spec.impulses.points)
        if (tau > start + merge_tol(tau) && tau <= end + merge_tol(tau))
            impulse_times.push_back(std::min(tau, end));

    // Seeds: window ends, impulse times, coefficient/forcing knots, history
    // knots (negative times act as image sources only).
    std::vector<double> working{start, end};
    working.insert(working.end(), impulse_times.begin(), impulse_times.end());
    auto add_knots = [&](const std::vector<double>& knots) {
        for (double k : knots)
            if (k > start && k < end) working.push_back(k);
    };
    add_knots(spec.forcing.breakpoints());
    for (const auto& term : spec.terms) {
        add_knots(term.coefficient.breakpoints());
        add_knots(term.delay.breakpoints());
    }
    for (double k : spec.history.breakpoints())
        if (k < 0.0) working.push_back(k);

    working = dedupe(std::move(working), impulse_times);

    // Propagate: a breakpoint at b creates one at every ξ with h_i(ξ) = b.
    std::vector<double> frontier = working;
    for (int d = 0; d < depth; ++d) {
        std::vector<double> images;
        for (const auto& term : spec.terms) {
            if (term.delay.is_zero_lag()) continue;
            for (double b : frontier) {
                double xi = term.delay.preimage(b, std::max(b, start), end);
                if (std::isnan(xi) || xi <= start || xi > end) continue;
                images.push_back(xi);
            }
        }
        if (images.empty()) break;
        std::vector<double> merged = working;
        merged.insert(merged.end(), images.begin(), images.end());
        merged = dedupe(std::move(merged), impulse_times);
        // Next frontier: points genuinely new this round.
        frontier.clear();
        for (double p : merged)
            if (std::none_of(working.begin(), working.end(), [&](double w) {
                    return std::abs(w - p) <= merge_tol(p);
                }))
                frontier.push_back(p);
        working = std::move(merged);
        if (frontier.empty()) break;
    }

    // Keep the window only (negative history sources drop out).
    std::vector<double> skeleton;
    for (double p : working)
        if (p >= start && p <= end) skeleton.push_back(p);
    if (skeleton.empty() || skeleton.front() != start)
        skeleton.insert(skeleton.begin(), start);
    if (skeleton.back() != end) skeleton.push_back(end);
    return skeleton;
}

Mesh build_mesh_window(const ProblemSpec& spec, double start, double horizon,
                       const MeshOptions& options) {
    require_valid(spec);
    if (!(horizon > start))
        throw std::invalid_argument("build_mesh: horizon must exceed start");
    if (!(options.base_step > 0.0))
        throw std::invalid_argument("build_mesh: base_step must be > 0");

    auto skeleton =
        breakpoint_skeleton(spec, start, horizon, options.propagation_depth);

    Mesh mesh;
    mesh.nodes.reserve(static_cast<std::size_t>(
        (horizon - start) / options.base_step + skeleton.size() + 2));
    for (std::size_t i = 0; i + 1 < skeleton.size(); ++i) {
        double a = skeleton[i], b = skeleton[i + 1];
        auto n = static_cast<std::size_t>(
            std::ceil((b - a) / options.base_step - 1e-12));
        if (n == 0) n = 1;
        mesh.nodes.push_back(a);
        for (std::size_t k = 1; k < n; ++k)
            mesh.nodes.push_back(a + (b - a) * static_cast<double>(k) /
                                         static_cast<double>(n));
    }
    mesh.nodes.push_back(skeleton.back());

    mesh.impulse_index.assign(mesh.nodes.size(), -1);
    for (std::size_t j = 0; j < spec.impulses.size(); ++j) {
        double tau = spec.impulses.points[j];
        if (tau <= start || tau > horizon + merge_tol(tau)) continue;
        std::size_t idx = mesh.node_at(std::min(tau, horizon));
        if (idx != Mesh::npos) mesh.impulse_index[idx] = static_cast<int>(j);
    }
    return mesh;
}

Mesh build_mesh(const ProblemSpec& spec, double horizon,
                const MeshOptions& options) {
    return build_mesh_window(spec, 0.0, horizon, options);
}

}  // namespace idde
