#include "idde/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "idde/fundamental.hpp"
#include "idde/solve.hpp"

namespace idde {

PositivityResult positivity_test(const ProblemSpec& spec, double horizon,
                                 double grid_step) {
    require_valid(spec);
    if (!(horizon > 0.0) || !(grid_step > 0.0))
        throw std::invalid_argument(
            "positivity_test: horizon and grid_step must be > 0");

    PositivityResult result;
    result.threshold = 1.0 / std::exp(1.0);
    auto n = static_cast<std::size_t>(std::ceil(horizon / grid_step));
    for (std::size_t i = 0; i <= n; ++i) {
        double t = std::min(horizon, grid_step * static_cast<double>(i));
        double functional = 0.0;
        for (const auto& term : spec.terms) {
            double lower = std::max(term.delay(t), 0.0);
            if (lower < t)
                functional += integrate_pos(term.coefficient, lower, t);
        }
        if (functional > result.max_functional) {
            result.max_functional = functional;
            result.argmax_t = t;
        }
    }
    result.pass = result.max_functional <= result.threshold + 1e-12;
    return result;
}

KEstimate estimate_k(const ProblemSpec& spec, double horizon,
                     std::span<const double> t_grid,
                     const MeshOptions& options) {
    require_valid(spec);
    if (!(horizon > 0.0))
        throw std::invalid_argument("estimate_k: horizon must be > 0");

    KEstimate est;
    double floor = -1e-9;

    PiecewiseSolution X = fundamental_solution(spec, horizon, options);
    for (std::size_t i = 0; i < X.values().size(); ++i) {
        if (X.value(i) <= 0.0 || (i > 0 && X.left_value(i) <= 0.0)) {
            est.note = "fundamental solution X is not positive on the grid";
            return est;
        }
    }

    std::vector<const PiecewiseSolution*> columns;
    std::vector<PiecewiseSolution> storage;
    storage.reserve(spec.impulses.size());
    for (double tau : spec.impulses.points) {
        if (tau > horizon) break;
        if (tau < horizon)
            storage.push_back(fundamental_function(spec, tau, horizon, options));
    }
    for (const auto& col : storage) {
        for (std::size_t i = 0; i < col.values().size(); ++i) {
            if (std::min(col.value(i), i > 0 ? col.left_value(i) : 0.0) <
                floor) {
                est.note = "fundamental function G is negative on the grid";
                return est;
            }
        }
        columns.push_back(&col);
    }

    est.hypotheses_met = true;
    double best = 0.0;
    for (double t : t_grid) {
        if (t < 0.0 || t > horizon) continue;
        double sum = 0.0;
        std::size_t ci = 0;
        for (double tau : spec.impulses.points) {
            if (tau > t + 1e-12 * std::max(1.0, std::abs(t))) break;
            if (tau < horizon) {
                sum += (*columns[ci])(t);
                ++ci;
            } else {
                sum += 1.0;  // τ == horizon contributes G(τ, τ) = 1 at t == τ
            }
        }
        if (sum > best) {
            best = sum;
            est.argmax_t = t;
        }
    }
    est.k = std::max(1.0 + k_floor_epsilon, best);
    if (best <= 1.0 + k_floor_epsilon)
        est.note = "k floored at 1 + epsilon";
    return est;
}

EstimateReport exponential_constants(double k, double sigma, double X_tau1,
                                     double boundary) {
    if (!(k > 1.0))
        throw std::invalid_argument("exponential_constants: need k > 1");
    if (!(sigma > 0.0))
        throw std::invalid_argument("exponential_constants: need sigma > 0");
    EstimateReport rep;
    rep.k = k;
    rep.sigma = sigma;
    rep.nu = std::log(k / (k - 1.0)) / sigma;
    rep.N = std::max(X_tau1 * k * k * k / ((k - 1.0) * (k - 1.0)), boundary);
    rep.provenance = EstimateProvenance::theorem2;
    return rep;
}

double boundary_sup(const PiecewiseSolution& X, double nu, double tau1) {
    double sup = 0.0;
    const auto& nodes = X.mesh().nodes;
    double tol = 1e-12 * std::max(1.0, std::abs(tau1));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i] > tau1 + tol) break;
        double w = std::exp(nu * nodes[i]);
        sup = std::max(sup, w * std::max(std::abs(X.value(i)),
                                         std::abs(X.left_value(i))));
    }
    return sup;
}

EstimateReport theorem3_constants(double k, double sigma, double M, double Q,
                                  int m) {
    if (!(k > 1.0))
        throw std::invalid_argument("theorem3_constants: need k > 1");
    if (!(sigma > 0.0))
        throw std::invalid_argument("theorem3_constants: need sigma > 0");
    if (M < 0.0 || Q < 0.0 || m < 0)
        throw std::invalid_argument("theorem3_constants: need M, Q, m >= 0");
    EstimateReport rep;
    rep.k = k;
    rep.sigma = sigma;
    rep.nu = std::log(k / (k - 1.0)) / sigma;
    double core = k * k * k / ((k - 1.0) * (k - 1.0));
    double mq = static_cast<double>(m) * Q;
    rep.N = (1.0 + M) * std::max(std::exp(mq * sigma) * core,
                                 std::exp(sigma * (rep.nu + mq)));
    rep.provenance = EstimateProvenance::theorem3;
    return rep;
}

double gronwall_bound(const ProblemSpec& spec, double s, double t) {
    require_valid(spec);
    if (!(s <= t)) throw std::invalid_argument("gronwall_bound: need s <= t");
    const auto& pts = spec.impulses.points;
    auto it = std::lower_bound(pts.begin(), pts.end(), t);
    if (it == pts.end())
        throw std::invalid_argument(
            "gronwall_bound: t lies beyond the last impulse point");
    std::size_t p = static_cast<std::size_t>(it - pts.begin());
    double prev = p == 0 ? 0.0 : pts[p - 1];
    if (!(s > prev))
        throw std::invalid_argument(
            "gronwall_bound: s and t straddle an impulse point");
    double mass = 0.0;
    for (const auto& term : spec.terms)
        mass += integrate_abs(term.coefficient, s, t);
    return (1.0 + std::abs(spec.impulses.multipliers[p])) * std::exp(mass);
}

VerifyResult verify_exponential_estimate(const ProblemSpec& spec,
                                         const EstimateReport& report,
                                         double horizon,
                                         std::span<const double> grid,
                                         double tolerance,
                                         const MeshOptions& options) {
    require_valid(spec);
    VerifyResult result;
    result.worst_margin = std::numeric_limits<double>::infinity();

    auto update = [&](double margin, double t, double s) {
        if (margin < result.worst_margin) {
            result.worst_margin = margin;
            result.worst_t = t;
            result.worst_s = s;
        }
    };

    if (report.provenance == EstimateProvenance::theorem3) {
        // |G(t,s)| <= N exp(-nu (t - s)) over grid pairs s <= t.
        for (double s : grid) {
            if (s < 0.0 || s >= horizon) continue;
            PiecewiseSolution G =
                fundamental_function(spec, s, horizon, options);
            for (double t : grid) {
                if (t < s || t > horizon) continue;
                double bound = report.N * std::exp(-report.nu * (t - s));
                update(bound + tolerance - std::abs(G(t)), t, s);
            }
        }
    } else {
        // |X(t)| <= N exp(-nu t); both one-sided values where they differ.
        PiecewiseSolution X = fundamental_solution(spec, horizon, options);
        for (double t : grid) {
            if (t < 0.0 || t > horizon) continue;
            double bound = report.N * std::exp(-report.nu * t);
            double mag =
                std::max(std::abs(X(t, Side::right)), std::abs(X(t, Side::left)));
            update(bound + tolerance - mag, t, 0.0);
        }
    }
    result.pass = result.worst_margin >= 0.0;
    return result;
}

namespace {

FunctionDescriptor random_step_forcing(std::mt19937_64& rng, double horizon,
                                       InputClass klass, double P,
                                       double lambda) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto n = static_cast<std::size_t>(std::ceil(horizon)) + 1;
    std::vector<double> breaks, values;
    values.reserve(n + 1);
    for (std::size_t kpiece = 0; kpiece <= n; ++kpiece) {
        double c = unit(rng);
        double tk = static_cast<double>(kpiece);
        switch (klass) {
            case InputClass::bounded:
                values.push_back(c);
                break;
            case InputClass::vanishing:
                values.push_back(c / (tk + 1.0));
                break;
            case InputClass::exponential:
                values.push_back(c * P * std::exp(-lambda * (tk + 1.0)));
                break;
        }
        if (kpiece < n) breaks.push_back(tk + 1.0);
    }
    return FunctionDescriptor::piecewise_constant(std::move(breaks),
                                                  std::move(values));
}

}  // namespace

ProbeResult input_probe(const ProblemSpec& spec, InputClass input_class,
                        const ProbeOptions& options) {
    require_valid(spec);
    if (!(options.horizon > 0.0) || options.trials < 1)
        throw std::invalid_argument("input_probe: bad horizon or trial count");

    ProbeResult result;
    result.input_class = input_class;
    result.seed = options.seed;
    result.trials = options.trials;

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    std::vector<double> envelope;   // per-node max |x| across trials
    std::vector<double> env_times;
    double tail_from = 0.8 * options.horizon;

    for (int trial = 0; trial < options.trials; ++trial) {
        ProblemSpec instance = spec;
        instance.initial_value = options.P * unit(rng);
        instance.forcing = random_step_forcing(rng, options.horizon,
                                               input_class, options.P,
                                               options.lambda);
        double sup_alpha = 0.0;
        for (std::size_t j = 0; j < instance.impulses.size(); ++j) {
            double c = unit(rng);
            double n1 = static_cast<double>(j) + 1.0;
            double alpha = 0.0;
            switch (input_class) {
                case InputClass::bounded: alpha = c; break;
                case InputClass::vanishing: alpha = c / (n1 + 1.0); break;
                case InputClass::exponential:
                    alpha = c * options.P * std::exp(-options.lambda * n1);
                    break;
            }
            instance.impulses.jumps[j] = alpha;
            sup_alpha = std::max(sup_alpha, std::abs(alpha));
        }

        PiecewiseSolution x = solve(instance, options.horizon, options.mesh);
        const auto& nodes = x.mesh().nodes;
        if (envelope.empty()) {
            envelope.assign(nodes.size(), 0.0);
            env_times = nodes;
        }
        double sup = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            double mag = std::max(std::abs(x.value(i)),
                                  i > 0 ? std::abs(x.left_value(i)) : 0.0);
            sup = std::max(sup, mag);
            if (nodes[i] >= tail_from)
                result.tail_sup = std::max(result.tail_sup, mag);
            if (i < envelope.size() && env_times[i] == nodes[i])
                envelope[i] = std::max(envelope[i], mag);
        }
        result.sup_abs = std::max(result.sup_abs, sup);
        result.per_trial_sup.push_back(sup);
        result.per_trial_x0.push_back(std::abs(instance.initial_value));
        double sup_r = 0.0;
        for (double v : instance.forcing.values())
            sup_r = std::max(sup_r, std::abs(v));
        result.per_trial_sup_r.push_back(sup_r);
        result.per_trial_sup_alpha.push_back(sup_alpha);
    }

    if (input_class == InputClass::exponential) {
        // Fit the trial-max envelope past the first impulse: individual
        // trajectories cross zero, the envelope does not.
        double from = 0.2 * options.horizon;
        if (!spec.impulses.points.empty())
            from = std::max(from, spec.impulses.points.front());
        std::vector<std::pair<double, double>> samples;
        std::size_t stride = std::max<std::size_t>(1, envelope.size() / 400);
        for (std::size_t i = 0; i < envelope.size(); i += stride)
            if (env_times[i] >= from && envelope[i] > 1e-12)
                samples.emplace_back(env_times[i], envelope[i]);
        if (samples.size() >= 10) {
            DecayFit fit = fit_decay(samples);
            result.fitted = std::make_pair(fit.N_fit, fit.nu_fit);
        }
    }

    bool finite = std::isfinite(result.sup_abs);
    switch (input_class) {
        case InputClass::bounded:
            result.verdict = finite;
            break;
        case InputClass::vanishing:
            result.verdict = finite &&
                             result.tail_sup <=
                                 std::max(0.75 * result.sup_abs, 1e-9);
            break;
        case InputClass::exponential:
            result.verdict = finite && (result.sup_abs == 0.0 ||
                                        (result.fitted &&
                                         result.fitted->second > 0.0));
            break;
    }
    return result;
}

DecayFit fit_decay(std::span<const std::pair<double, double>> samples) {
    constexpr double practical_floor = 1e-12;
    constexpr double hard_guard = 1e-300;
    std::vector<std::pair<double, double>> usable;
    for (const auto& [t, v] : samples) {
        double mag = std::abs(v);
        if (mag > practical_floor && mag > hard_guard) usable.emplace_back(t, mag);
    }
    if (samples.size() >= 10 && usable.empty())
        throw std::invalid_argument("fit_decay: all samples below the floor");
    if (usable.size() < 10)
        throw std::invalid_argument(
            "fit_decay: need at least 10 samples above the floor");

    double n = static_cast<double>(usable.size());
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (const auto& [t, mag] : usable) {
        double y = std::log(mag);
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
    }
    double denom = n * stt - st * st;
    if (denom == 0.0)
        throw std::invalid_argument("fit_decay: degenerate sample times");
    double slope = (n * sty - st * sy) / denom;
    double intercept = (sy - slope * st) / n;
    return {std::exp(intercept), -slope};
}

}  // namespace idde
