#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "idde/idde.hpp"

namespace idde::testing {

// x'(t) + x(t - 1/3) = 0, x(0) = 1, zero history, x(j/3) = (1/6) x(j/3 - 0).
inline ProblemSpec third_lag_sixth_jumps(int impulses = 3) {
    ProblemSpec spec;
    spec.terms.push_back({FunctionDescriptor::constant(1.0),
                          DeviationDescriptor::constant_lag(1.0 / 3.0)});
    spec.initial_value = 1.0;
    std::vector<double> pts, mult;
    for (int j = 1; j <= impulses; ++j) {
        pts.push_back(static_cast<double>(j) / 3.0);
        mult.push_back(1.0 / 6.0);
    }
    spec.impulses = ImpulseSchedule::make(pts, mult);
    return spec;
}

// x'(t) + x(t) = 0, x(0) = 1: X(t) = e^{-t}.
inline ProblemSpec pure_decay() {
    ProblemSpec spec;
    spec.terms.push_back({FunctionDescriptor::constant(1.0),
                          DeviationDescriptor::constant_lag(0.0)});
    spec.initial_value = 1.0;
    return spec;
}

// x'(t) + x(t) = 0 with x(j) = (1/2) x(j - 0): X(t) = 2^{-floor(t)} e^{-t}.
inline ProblemSpec halving_at_integers(int impulses = 20) {
    ProblemSpec spec = pure_decay();
    std::vector<double> pts, mult;
    for (int j = 1; j <= impulses; ++j) {
        pts.push_back(static_cast<double>(j));
        mult.push_back(0.5);
    }
    spec.impulses = ImpulseSchedule::make(pts, mult);
    return spec;
}

inline double halving_closed_form(double t) {
    return std::pow(2.0, -std::floor(t)) * std::exp(-t);
}

// x'(t) + 0.5 x(t - 0.3) = 0 with x(j) = 1.5 x(j - 0): the 1/e functional is
// 0.15 and B_j >= 1, so C > 0 and G > 0.
inline ProblemSpec half_coeff_lag03_b15(int impulses = 5) {
    ProblemSpec spec;
    spec.terms.push_back({FunctionDescriptor::constant(0.5),
                          DeviationDescriptor::constant_lag(0.3)});
    spec.initial_value = 1.0;
    std::vector<double> pts, mult;
    for (int j = 1; j <= impulses; ++j) {
        pts.push_back(static_cast<double>(j));
        mult.push_back(1.5);
    }
    spec.impulses = ImpulseSchedule::make(pts, mult);
    return spec;
}

inline double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine);
    }
    int integer(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(engine);
    }
};

// Random impulse times in (lo, hi) with a guaranteed minimal gap.
inline std::vector<double> random_points(Rng& rng, int count, double lo,
                                         double hi, double min_gap) {
    std::vector<double> pts;
    while (static_cast<int>(pts.size()) < count) {
        double p = rng.uniform(lo, hi);
        bool ok = true;
        for (double q : pts)
            if (std::abs(q - p) < min_gap) ok = false;
        if (ok) pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

}  // namespace idde::testing
