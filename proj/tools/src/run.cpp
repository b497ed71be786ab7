#include "iddecli/run.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "idde/idde.hpp"
#include "iddecli/problem_file.hpp"

namespace idde::cli {

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw UsageError("cannot open output file '" + path + "'");
    return f;
}

void maybe_csv(const std::string& path,
               const std::function<void(std::ostream&)>& writer) {
    if (path.empty()) return;
    auto f = open_out(path);
    writer(f);
}

MeshOptions mesh_options(const RunConfig& c) { return {c.step, c.depth}; }

std::vector<double> default_grid(double horizon, int n) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        grid.push_back(horizon * static_cast<double>(i) /
                       static_cast<double>(n));
    return grid;
}

std::vector<double> grid_or_default(const std::string& text, double horizon,
                                    int n) {
    return text.empty() ? default_grid(horizon, n) : parse_grid(text);
}

int cmd_solve(const RunConfig& c, const ProblemSpec& spec, std::ostream& out) {
    PiecewiseSolution sol = solve(spec, c.horizon, mesh_options(c));
    maybe_csv(c.out_path, [&](std::ostream& f) { write_solution_csv(f, sol); });
    out << "nodes = " << sol.mesh().size() << "\n";
    out << "x(horizon) = " << format_full(sol(c.horizon)) << "\n";
    return kOk;
}

int cmd_column_table(const RunConfig& c, const ProblemSpec& spec,
                     std::ostream& out, bool impulsive) {
    std::vector<double> s_values =
        c.sgrid.empty() ? std::vector<double>{c.s} : parse_grid(c.sgrid);
    for (double s : s_values)
        if (!(s >= 0.0) || !(s < c.horizon))
            throw UsageError("column start s must satisfy 0 <= s < horizon");
    FundamentalTable table = FundamentalTable::build(
        spec, s_values, c.horizon, mesh_options(c), impulsive);

    std::vector<double> t_grid;
    if (!c.tgrid.empty()) {
        t_grid = parse_grid(c.tgrid);
    } else {
        // Default: the first column's own nodes.
        t_grid = table.column(0).mesh().nodes;
    }
    maybe_csv(c.out_path,
              [&](std::ostream& f) { write_table_csv(f, table, t_grid); });

    for (std::size_t j = 0; j < s_values.size(); ++j) {
        auto brackets = sign_changes(table.column(j), 1e-9);
        for (const auto& b : brackets)
            out << "sign_change[s=" << format_full(s_values[j])
                << "] = " << format_full(b.lo) << " .. " << format_full(b.hi)
                << "\n";
    }
    out << "columns = " << s_values.size() << "\n";
    return kOk;
}

int cmd_expand(const RunConfig& c, const ProblemSpec& spec, std::ostream& out) {
    std::vector<double> t_grid = grid_or_default(c.tgrid, c.horizon, 10);
    std::vector<double> s_grid = grid_or_default(c.sgrid, c.horizon, 10);

    CauchyEvaluator C(spec, c.horizon, mesh_options(c));
    std::ostringstream csv;
    csv << "t,s,G_direct,G_expansion,G_recursion,abs_error\n";
    double worst = 0.0;
    std::map<double, PiecewiseSolution> direct_columns;
    for (double s : s_grid) {
        if (s < 0.0 || s >= c.horizon) continue;
        auto it = direct_columns.find(s);
        if (it == direct_columns.end())
            it = direct_columns
                     .emplace(s, fundamental_function(spec, s, c.horizon,
                                                      mesh_options(c)))
                     .first;
        for (double t : t_grid) {
            if (t < s || t > c.horizon) continue;
            double direct = it->second(t);
            double exp_v = expansion_G(C, spec.impulses, t, s);
            double rec_v = recursion_G(C, spec.impulses, t, s);
            double err = std::max({std::abs(exp_v - direct),
                                   std::abs(rec_v - direct),
                                   std::abs(exp_v - rec_v)});
            worst = std::max(worst, err);
            csv << format_full(t) << ',' << format_full(s) << ','
                << format_full(direct) << ',' << format_full(exp_v) << ','
                << format_full(rec_v) << ',' << format_full(err) << '\n';
        }
    }
    maybe_csv(c.out_path, [&](std::ostream& f) { f << csv.str(); });
    out << "max_abs_error = " << format_full(worst) << "\n";
    return kOk;
}

int verify_lemma1(const RunConfig& c, const ProblemSpec& spec,
                  std::ostream& out) {
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> uni(0.0, c.horizon);
    std::vector<Lemma1Triple> triples;
    triples.reserve(static_cast<std::size_t>(c.trials));
    for (int i = 0; i < c.trials; ++i) {
        double a = uni(rng), b = uni(rng), t = uni(rng);
        double lo = std::min({a, b, t}), hi = std::max({a, b, t});
        double mid = a + b + t - lo - hi;
        triples.push_back({lo, mid, hi});
    }
    Lemma1Options options;
    options.tolerance = c.tol;
    options.mesh = mesh_options(c);
    Lemma1Report rep = check_lemma1(spec, triples, options);
    if (rep.status == Lemma1Report::Status::hypotheses_not_met) {
        out << "status = hypotheses-not-met\n";
        out << "note = " << rep.note << "\n";
        return kVerificationFailed;
    }
    out << "status = ok\n";
    out << "checked = " << rep.checked << "\n";
    out << "submultiplicative_violations = "
        << rep.submultiplicative_violations << "\n";
    out << "lower_bound_violations = " << rep.lower_bound_violations << "\n";
    out << "worst_submultiplicative_margin = "
        << format_full(rep.worst_submultiplicative_margin) << "\n";
    out << "worst_lower_bound_margin = "
        << format_full(rep.worst_lower_bound_margin) << "\n";
    return rep.passed() ? kOk : kVerificationFailed;
}

int verify_theorem5(const RunConfig& c, const ProblemSpec& spec,
                    std::ostream& out) {
    std::vector<double> t_grid = grid_or_default(c.tgrid, c.horizon, 10);
    std::vector<double> s_grid = grid_or_default(c.sgrid, c.horizon, 10);
    CauchyEvaluator C(spec, c.horizon, mesh_options(c));
    double worst = 0.0;
    for (double s : s_grid) {
        if (s < 0.0 || s >= c.horizon) continue;
        PiecewiseSolution direct =
            fundamental_function(spec, s, c.horizon, mesh_options(c));
        for (double t : t_grid) {
            if (t < s || t > c.horizon) continue;
            double exp_v = expansion_G(C, spec.impulses, t, s);
            double rec_v = recursion_G(C, spec.impulses, t, s);
            double d = direct(t);
            worst = std::max({worst, std::abs(exp_v - d), std::abs(rec_v - d),
                              std::abs(exp_v - rec_v)});
        }
    }
    out << "max_abs_error = " << format_full(worst) << "\n";
    out << "tolerance = " << format_full(c.tol) << "\n";
    return worst <= c.tol ? kOk : kVerificationFailed;
}

int verify_representation(const RunConfig& c, const ProblemSpec& spec,
                          std::ostream& out) {
    ResidualReport rep =
        representation_residual(spec, c.horizon, mesh_options(c), c.qstep);
    maybe_csv(c.out_path, [&](std::ostream& f) {
        f << "t,direct,representation,abs_error\n";
        for (std::size_t i = 0; i < rep.times.size(); ++i)
            f << format_full(rep.times[i]) << ',' << format_full(rep.direct[i])
              << ',' << format_full(rep.represented[i]) << ','
              << format_full(std::abs(rep.direct[i] - rep.represented[i]))
              << '\n';
    });
    out << "max_abs_error = " << format_full(rep.max_abs_error) << "\n";
    out << "tolerance = " << format_full(c.tol) << "\n";
    return rep.max_abs_error <= c.tol ? kOk : kVerificationFailed;
}

int verify_positivity(const RunConfig& c, const ProblemSpec& spec,
                      std::ostream& out) {
    PositivityResult res = positivity_test(spec, c.horizon, c.grid_step);
    out << "max_functional = " << format_full(res.max_functional) << "\n";
    out << "threshold_1_over_e = " << format_full(res.threshold) << "\n";
    out << "argmax_t = " << format_full(res.argmax_t) << "\n";
    out << "result = " << (res.pass ? "pass" : "inconclusive") << "\n";
    return res.pass ? kOk : kVerificationFailed;
}

int verify_estimate(const RunConfig& c, const ProblemSpec& spec,
                    std::ostream& out) {
    HypothesisReport hyp = check_hypotheses(spec, c.horizon);
    if (!hyp.sigma) {
        out << "status = no-impulse-points\n";
        return kVerificationFailed;
    }
    std::vector<double> grid = grid_or_default(c.tgrid, c.horizon, 400);
    KEstimate est = estimate_k(spec, c.horizon, grid, mesh_options(c));
    if (!est.hypotheses_met) {
        out << "status = hypotheses-not-met\n";
        out << "note = " << est.note << "\n";
        return kVerificationFailed;
    }
    PiecewiseSolution X = fundamental_solution(spec, c.horizon, mesh_options(c));
    double tau1 = spec.impulses.points.front();
    double nu = std::log(est.k / (est.k - 1.0)) / *hyp.sigma;
    EstimateReport rep = exponential_constants(est.k, *hyp.sigma, X(tau1),
                                               boundary_sup(X, nu, tau1));
    rep.horizon = c.horizon;
    VerifyResult ver = verify_exponential_estimate(spec, rep, c.horizon, grid,
                                                   c.tol, mesh_options(c));
    out << "k = " << format_full(rep.k) << "\n";
    out << "sigma = " << format_full(rep.sigma) << "\n";
    if (hyp.rho) out << "rho = " << format_full(*hyp.rho) << "\n";
    out << "min_gap_positive = " << (hyp.verdict(6).pass ? "yes" : "no")
        << "\n";
    out << "horizon = " << format_full(c.horizon) << "\n";
    out << "nu = " << format_full(rep.nu) << "\n";
    out << "N = " << format_full(rep.N) << "\n";
    out << "worst_margin = " << format_full(ver.worst_margin) << "\n";
    out << "result = " << (ver.pass ? "pass" : "fail") << "\n";

    // Theorem-3 flavor for the same data, on the delayed form.
    EstimateReport rep3 = theorem3_constants(
        est.k, *hyp.sigma, hyp.M, hyp.Q_from_0,
        static_cast<int>(spec.terms.size()));
    out << "theorem3_N = " << format_full(rep3.N) << "\n";
    return ver.pass ? kOk : kVerificationFailed;
}

int cmd_probe(const RunConfig& c, const ProblemSpec& spec, std::ostream& out) {
    InputClass klass;
    if (c.variant == "bounded")
        klass = InputClass::bounded;
    else if (c.variant == "vanishing")
        klass = InputClass::vanishing;
    else if (c.variant == "exponential")
        klass = InputClass::exponential;
    else
        throw UsageError("probe class must be bounded|vanishing|exponential");

    ProbeOptions options;
    options.trials = c.trials;
    options.horizon = c.horizon;
    options.seed = c.seed;
    options.mesh = mesh_options(c);
    ProbeResult res = input_probe(spec, klass, options);

    maybe_csv(c.out_path, [&](std::ostream& f) {
        f << "trial,sup_abs,x0,sup_r,sup_alpha\n";
        for (std::size_t i = 0; i < res.per_trial_sup.size(); ++i)
            f << i << ',' << format_full(res.per_trial_sup[i]) << ','
              << format_full(res.per_trial_x0[i]) << ','
              << format_full(res.per_trial_sup_r[i]) << ','
              << format_full(res.per_trial_sup_alpha[i]) << '\n';
    });
    out << "trials = " << res.trials << "\n";
    out << "seed = " << res.seed << "\n";
    out << "sup_abs = " << format_full(res.sup_abs) << "\n";
    out << "tail_sup = " << format_full(res.tail_sup) << "\n";
    if (res.fitted) {
        out << "P0 = " << format_full(res.fitted->first) << "\n";
        out << "lambda0 = " << format_full(res.fitted->second) << "\n";
    }
    out << "verdict = " << (res.verdict ? "pass" : "fail") << "\n";
    return res.verdict ? kOk : kVerificationFailed;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
    double a = 0.0, b = 0.0, h = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> a >> c1 >> b >> c2 >> h) || c1 != ':' || c2 != ':' ||
        !(h > 0.0) || !(b >= a))
        throw UsageError("bad grid '" + text + "' (expected a:b:h with h > 0)");
    std::vector<double> grid;
    auto n = static_cast<std::size_t>(std::floor((b - a) / h + 1e-9));
    for (std::size_t i = 0; i <= n; ++i)
        grid.push_back(a + h * static_cast<double>(i));
    if (std::abs(grid.back() - b) > 1e-9 * std::max(1.0, std::abs(b)))
        grid.push_back(b);
    else
        grid.back() = b;
    return grid;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (!(config.horizon > 0.0))
            throw UsageError("--horizon must be > 0");
        if (!(config.step > 0.0) || !(config.tol > 0.0) ||
            !(config.qstep > 0.0))
            throw UsageError("--step, --tol and --qstep must be > 0");
        ProblemSpec spec = load_problem_file(config.problem_path);

        if (config.command == "solve") return cmd_solve(config, spec, out);
        if (config.command == "fundamental")
            return cmd_column_table(config, spec, out, true);
        if (config.command == "cauchy")
            return cmd_column_table(config, spec, out, false);
        if (config.command == "expand") return cmd_expand(config, spec, out);
        if (config.command == "verify") {
            if (config.variant == "lemma1")
                return verify_lemma1(config, spec, out);
            if (config.variant == "theorem5")
                return verify_theorem5(config, spec, out);
            if (config.variant == "representation")
                return verify_representation(config, spec, out);
            if (config.variant == "positivity")
                return verify_positivity(config, spec, out);
            if (config.variant == "estimate")
                return verify_estimate(config, spec, out);
            throw UsageError(
                "verify target must be "
                "lemma1|theorem5|representation|positivity|estimate");
        }
        if (config.command == "probe") return cmd_probe(config, spec, out);
        throw UsageError("unknown command '" + config.command + "'");
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kVerificationFailed;
    }
}

}  // namespace idde::cli
