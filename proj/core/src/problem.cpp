#include "idde/problem.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace idde {

ImpulseSchedule ImpulseSchedule::make(std::vector<double> points,
                                      std::vector<double> multipliers,
                                      std::vector<double> jumps) {
    ImpulseSchedule s;
    s.points = std::move(points);
    s.multipliers = std::move(multipliers);
    s.jumps = std::move(jumps);
    if (s.jumps.empty()) s.jumps.assign(s.points.size(), 0.0);
    return s;
}

bool ProblemSpec::has_delay() const {
    for (const auto& term : terms)
        if (!term.delay.is_zero_lag()) return true;
    return false;
}

std::vector<std::string> validate(const ProblemSpec& spec) {
    std::vector<std::string> errors;
    auto append = [&errors](std::vector<std::string> more) {
        for (auto& e : more) errors.push_back(std::move(e));
    };

    for (std::size_t i = 0; i < spec.terms.size(); ++i) {
        std::string label = "term[" + std::to_string(i) + "]";
        append(spec.terms[i].coefficient.invariant_errors(label + ".coefficient"));
        append(spec.terms[i].delay.invariant_errors(label + ".delay"));
    }
    append(spec.forcing.invariant_errors("forcing"));
    append(spec.history.invariant_errors("history"));
    if (!std::isfinite(spec.initial_value))
        errors.push_back("initial_value: not finite");

    const auto& imp = spec.impulses;
    for (double p : imp.points)
        if (!std::isfinite(p)) {
            errors.push_back("impulses: non-finite point");
            break;
        }
    for (std::size_t j = 0; j < imp.points.size(); ++j) {
        if (imp.points[j] <= 0.0) {
            errors.push_back("impulses: points must be positive");
            break;
        }
    }
    for (std::size_t j = 1; j < imp.points.size(); ++j) {
        if (!(imp.points[j] > imp.points[j - 1])) {
            errors.push_back("impulses: points not strictly increasing");
            break;
        }
    }
    if (imp.multipliers.size() != imp.points.size())
        errors.push_back("impulses: multipliers length mismatch");
    if (imp.jumps.size() != imp.points.size())
        errors.push_back("impulses: jumps length mismatch");
    for (double v : imp.multipliers)
        if (!std::isfinite(v)) {
            errors.push_back("impulses: non-finite multiplier");
            break;
        }
    for (double v : imp.jumps)
        if (!std::isfinite(v)) {
            errors.push_back("impulses: non-finite jump");
            break;
        }
    return errors;
}

const ProblemSpec& require_valid(const ProblemSpec& spec) {
    auto errors = validate(spec);
    if (errors.empty()) return spec;
    std::ostringstream msg;
    msg << "invalid problem:";
    for (const auto& e : errors) msg << "\n  - " << e;
    throw std::invalid_argument(msg.str());
}

}  // namespace idde
