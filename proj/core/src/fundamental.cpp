#include "idde/fundamental.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <limits>
#include <stdexcept>
#include <thread>

namespace idde {

namespace {

detail::IntegrateSetup column_setup(double s, bool with_impulses) {
    detail::IntegrateSetup setup;
    setup.start = s;
    setup.start_value = 1.0;
    setup.homogeneous = true;
    setup.zero_history = true;
    setup.with_impulses = with_impulses;
    return setup;
}

PiecewiseSolution solve_column(const ProblemSpec& spec, double s, double horizon,
                         const MeshOptions& options, bool with_impulses) {
    require_valid(spec);
    if (!(s >= 0.0) || !(s < horizon))
        throw std::invalid_argument(
            "fundamental/cauchy column: need 0 <= s < horizon");
    Mesh mesh = build_mesh_window(spec, s, horizon, options);
    return detail::integrate(spec, mesh, column_setup(s, with_impulses));
}

}  // namespace

PiecewiseSolution fundamental_solution(const ProblemSpec& spec, double horizon,
                                       const MeshOptions& options) {
    return solve_column(spec, 0.0, horizon, options, true);
}

PiecewiseSolution fundamental_function(const ProblemSpec& spec, double s,
                                       double horizon,
                                       const MeshOptions& options) {
    return solve_column(spec, s, horizon, options, true);
}

PiecewiseSolution cauchy_function(const ProblemSpec& spec, double s,
                                  double horizon, const MeshOptions& options) {
    return solve_column(spec, s, horizon, options, false);
}

FundamentalTable FundamentalTable::build(const ProblemSpec& spec,
                                         std::vector<double> s_values,
                                         double horizon,
                                         const MeshOptions& options,
                                         bool impulsive, bool parallel) {
    require_valid(spec);
    FundamentalTable table;
    table.s_values_ = std::move(s_values);
    table.impulsive_ = impulsive;
    table.columns_.reserve(table.s_values_.size());

    auto make = [&](double s) {
        return solve_column(spec, s, horizon, options, impulsive);
    };
    if (!parallel || table.s_values_.size() < 2) {
        for (double s : table.s_values_) table.columns_.push_back(make(s));
        return table;
    }
    std::vector<std::future<PiecewiseSolution>> futures;
    futures.reserve(table.s_values_.size());
    for (double s : table.s_values_)
        futures.push_back(std::async(std::launch::async | std::launch::deferred,
                                     make, s));
    for (auto& f : futures) table.columns_.push_back(f.get());
    return table;
}

double FundamentalTable::operator()(double t, std::size_t s_index) const {
    double s = s_values_[s_index];
    if (t < s) return 0.0;
    return columns_[s_index](t);
}

Lemma1Report check_lemma1(const ProblemSpec& spec,
                          std::span<const Lemma1Triple> triples,
                          const Lemma1Options& options) {
    require_valid(spec);
    Lemma1Report report;
    if (triples.empty()) return report;

    double horizon = 0.0;
    for (const auto& tr : triples) {
        if (!(0.0 <= tr.s && tr.s <= tr.zeta && tr.zeta <= tr.t))
            throw std::invalid_argument(
                "check_lemma1: triples must satisfy 0 <= s <= zeta <= t");
        horizon = std::max(horizon, tr.t);
    }
    if (horizon <= 0.0) horizon = 1.0;

    // Hypotheses (grid-relative): A_i >= 0 on the horizon, computed X > 0,
    // computed G >= 0 on every column actually used.
    for (const auto& term : spec.terms) {
        for (const auto& piece : term.coefficient.pieces_on(0.0, horizon)) {
            if (std::min(piece.at(piece.a), piece.at(piece.b)) < -1e-12) {
                report.status = Lemma1Report::Status::hypotheses_not_met;
                report.note = "coefficient A_i takes negative values";
                return report;
            }
        }
    }

    PiecewiseSolution X = fundamental_solution(spec, horizon, options.mesh);
    for (std::size_t i = 0; i < X.values().size(); ++i) {
        if (X.value(i) <= 0.0 || (i > 0 && X.left_value(i) <= 0.0)) {
            report.status = Lemma1Report::Status::hypotheses_not_met;
            report.note = "fundamental solution X is not positive on the grid";
            return report;
        }
    }

    std::map<double, PiecewiseSolution> columns;
    columns.emplace(0.0, X);
    auto get_column = [&](double s) -> const PiecewiseSolution& {
        auto it = columns.find(s);
        if (it == columns.end())
            it = columns
                     .emplace(s, fundamental_function(spec, s, horizon,
                                                      options.mesh))
                     .first;
        return it->second;
    };
    auto G = [&](double t, double s) -> double {
        if (t <= s + 1e-15 * std::max(1.0, std::abs(s))) return 1.0;
        return get_column(s)(t);
    };

    // Build all columns first so the G >= 0 hypothesis covers them.
    for (const auto& tr : triples) {
        if (tr.s < tr.t) get_column(tr.s);
        if (tr.zeta < tr.t) get_column(tr.zeta);
    }
    for (const auto& [s, col] : columns) {
        for (std::size_t i = 0; i < col.values().size(); ++i) {
            if (std::min(col.value(i), i > 0 ? col.left_value(i) : 0.0) <
                -options.negativity_floor) {
                report.status = Lemma1Report::Status::hypotheses_not_met;
                report.note = "fundamental function G is negative on the grid";
                return report;
            }
        }
    }

    report.worst_submultiplicative_margin =
        std::numeric_limits<double>::infinity();
    report.worst_lower_bound_margin = std::numeric_limits<double>::infinity();
    for (const auto& tr : triples) {
        double Gts = G(tr.t, tr.s);
        double Gtz = G(tr.t, tr.zeta);
        double Gzs = G(tr.zeta, tr.s);
        double sub_margin = Gtz * Gzs + options.tolerance - Gts;
        double low_margin = Gts - (X(tr.t) / X(tr.s) - options.tolerance);
        report.worst_submultiplicative_margin =
            std::min(report.worst_submultiplicative_margin, sub_margin);
        report.worst_lower_bound_margin =
            std::min(report.worst_lower_bound_margin, low_margin);
        if (sub_margin < 0.0) ++report.submultiplicative_violations;
        if (low_margin < 0.0) ++report.lower_bound_violations;
        ++report.checked;
    }
    return report;
}

}  // namespace idde
