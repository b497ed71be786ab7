#include <cmath>

#include "common.hpp"
#include "doctest.h"
#include "idde/mesh.hpp"
#include "idde/solve.hpp"

using namespace idde;
using namespace idde::testing;

TEST_SUITE("integrator") {

TEST_CASE("mesh contains window ends, impulses and delay images") {
    ProblemSpec spec = third_lag_sixth_jumps(2);
    Mesh mesh = build_mesh(spec, 1.0, {0.25, 2});
    for (double t : {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0})
        CHECK(mesh.node_at(t) != Mesh::npos);
    for (std::size_t i = 1; i < mesh.nodes.size(); ++i) {
        CHECK(mesh.nodes[i] > mesh.nodes[i - 1]);
        CHECK(mesh.nodes[i] - mesh.nodes[i - 1] <= 0.25 + 1e-12);
    }
}

TEST_CASE("mesh with no breakpoints is the uniform grid") {
    ProblemSpec spec;
    spec.initial_value = 1.0;
    Mesh mesh = build_mesh(spec, 1.0, {0.25, 3});
    REQUIRE(mesh.nodes.size() == 5);
    CHECK(mesh.nodes[0] == 0.0);
    CHECK(mesh.nodes[1] == 0.25);
    CHECK(mesh.nodes[2] == 0.5);
    CHECK(mesh.nodes[3] == 0.75);
    CHECK(mesh.nodes[4] == 1.0);
}

TEST_CASE("mesh propagates the image of an impulse point through the lag") {
    ProblemSpec spec;
    spec.initial_value = 1.0;
    spec.terms.push_back({FunctionDescriptor::constant(1.0),
                          DeviationDescriptor::constant_lag(0.4)});
    spec.impulses = ImpulseSchedule::make({0.5}, {1.0});
    Mesh mesh = build_mesh(spec, 1.0, {0.25, 1});
    CHECK(mesh.node_at(0.9) != Mesh::npos);  // 0.5 + 0.4
    CHECK(mesh.node_at(0.4) != Mesh::npos);  // image of the start
}

TEST_CASE("reference problem is reproduced to rounding on an aligned mesh") {
    ProblemSpec spec = third_lag_sixth_jumps(3);
    PiecewiseSolution x = solve(spec, 1.0, {1e-3, 3});
    const auto& nodes = x.mesh().nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        double t = nodes[i];
        if (t < 1.0 / 3.0 - 1e-15)
            CHECK(std::abs(x.value(i) - 1.0) <= 1e-13);
        else if (t < 2.0 / 3.0 - 1e-15)
            CHECK(std::abs(x.value(i) - (1.0 / 6.0 - (t - 1.0 / 3.0))) <=
                  1e-13);
    }
    std::size_t n23 = x.mesh().node_at(2.0 / 3.0);
    REQUIRE(n23 != Mesh::npos);
    CHECK(std::abs(x.left_value(n23) - (-1.0 / 6.0)) <= 1e-13);
    CHECK(std::abs(x.value(n23) - (-1.0 / 36.0)) <= 1e-13);
}

TEST_CASE("constant problem stays constant") {
    ProblemSpec spec;
    spec.initial_value = 1.0;
    PiecewiseSolution x = solve(spec, 1.0, {1e-2, 3});
    for (double v : x.values()) CHECK(v == 1.0);
}

TEST_CASE("jump relation is applied exactly at impulse nodes") {
    ProblemSpec spec = half_coeff_lag03_b15(3);
    spec.impulses.jumps = {0.2, -0.1, 0.05};
    PiecewiseSolution x = solve(spec, 3.5, {1e-2, 3});
    for (std::size_t i = 0; i < x.mesh().size(); ++i) {
        int j = x.mesh().impulse_index[i];
        if (j < 0) continue;
        CHECK(x.value(i) == spec.impulses.multipliers[j] * x.left_value(i) +
                                spec.impulses.jumps[j]);
    }
}

TEST_CASE("solution map is linear in initial value, forcing, history, jumps") {
    Rng rng(2024);
    for (int round = 0; round < 5; ++round) {
        auto make_inputs = [&](ProblemSpec& spec) {
            spec.initial_value = rng.uniform(-1.0, 1.0);
            spec.forcing = FunctionDescriptor::piecewise_constant(
                {1.0, 2.0},
                {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
            spec.history = FunctionDescriptor::constant(rng.uniform(-1, 1));
            for (auto& a : spec.impulses.jumps) a = rng.uniform(-1, 1);
        };
        ProblemSpec a = half_coeff_lag03_b15(3);
        ProblemSpec b = a;
        make_inputs(a);
        make_inputs(b);
        double c1 = rng.uniform(-2.0, 2.0), c2 = rng.uniform(-2.0, 2.0);

        ProblemSpec combined = a;
        combined.initial_value = c1 * a.initial_value + c2 * b.initial_value;
        std::vector<double> fvals;
        for (std::size_t i = 0; i < 3; ++i)
            fvals.push_back(c1 * a.forcing.values()[i] +
                            c2 * b.forcing.values()[i]);
        combined.forcing =
            FunctionDescriptor::piecewise_constant({1.0, 2.0}, fvals);
        combined.history = FunctionDescriptor::constant(
            c1 * a.history.values()[0] + c2 * b.history.values()[0]);
        for (std::size_t j = 0; j < combined.impulses.jumps.size(); ++j)
            combined.impulses.jumps[j] =
                c1 * a.impulses.jumps[j] + c2 * b.impulses.jumps[j];

        PiecewiseSolution xa = solve(a, 3.5, {1e-2, 3});
        PiecewiseSolution xb = solve(b, 3.5, {1e-2, 3});
        PiecewiseSolution xc = solve(combined, 3.5, {1e-2, 3});
        for (std::size_t i = 0; i < xc.mesh().size(); ++i)
            CHECK(rel_diff(xc.value(i),
                           c1 * xa.value(i) + c2 * xb.value(i)) <= 1e-10);
    }
}

TEST_CASE("halving the step gains at least a factor 8 against closed form") {
    ProblemSpec spec = halving_at_integers(3);
    auto max_err = [&](double step) {
        PiecewiseSolution x = solve(spec, 3.0, {step, 3});
        double err = 0.0;
        const auto& nodes = x.mesh().nodes;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            err = std::max(err,
                           std::abs(x.value(i) - halving_closed_form(nodes[i])));
        return err;
    };
    double coarse = max_err(0.02);
    double fine = max_err(0.01);
    CHECK(coarse > 1e-13);  // above the rounding floor
    CHECK(coarse / fine >= 8.0);
}

TEST_CASE("genuinely delayed problem converges at fourth order") {
    // Linear-in-t coefficient with a 0.25 lag: the exact solution's piecewise
    // degree grows past RK4 exactness after two delay intervals.
    ProblemSpec spec;
    spec.initial_value = 1.0;
    spec.history = FunctionDescriptor::constant(1.0);
    spec.terms.push_back(
        {FunctionDescriptor::table({0.0, 1.25}, {1.0, 1.625}),
         DeviationDescriptor::constant_lag(0.25)});
    PiecewiseSolution reference = solve(spec, 1.25, {1e-4, 4});
    auto max_err = [&](double step) {
        PiecewiseSolution x = solve(spec, 1.25, {step, 4});
        double err = 0.0;
        const auto& nodes = x.mesh().nodes;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            err = std::max(err, std::abs(x.value(i) - reference(nodes[i])));
        return err;
    };
    double coarse = max_err(0.025);
    double fine = max_err(0.0125);
    CHECK(coarse > 1e-12);
    CHECK(coarse / fine >= 8.0);
}

TEST_CASE("aligned piecewise-polynomial problem sits at the rounding floor") {
    ProblemSpec spec = third_lag_sixth_jumps(3);
    PiecewiseSolution coarse = solve(spec, 1.0, {2e-3, 3});
    PiecewiseSolution fine = solve(spec, 1.0, {1e-3, 3});
    auto err_against_exact = [](const PiecewiseSolution& x) {
        double err = 0.0;
        const auto& nodes = x.mesh().nodes;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            double t = nodes[i];
            if (t < 1.0 / 3.0 - 1e-15)
                err = std::max(err, std::abs(x.value(i) - 1.0));
            else if (t < 2.0 / 3.0 - 1e-15)
                err = std::max(
                    err, std::abs(x.value(i) - (1.0 / 6.0 - (t - 1.0 / 3.0))));
        }
        return err;
    };
    CHECK(err_against_exact(coarse) <= 1e-12);
    CHECK(err_against_exact(fine) <= 1e-12);
}

TEST_CASE("unit multipliers reproduce the non-impulsive solution") {
    ProblemSpec with = half_coeff_lag03_b15(4);
    for (auto& b : with.impulses.multipliers) b = 1.0;
    ProblemSpec without = with;
    without.impulses = ImpulseSchedule::none();
    PiecewiseSolution xi = solve(with, 4.5, {1e-3, 3});
    PiecewiseSolution xn = solve(without, 4.5, {1e-3, 3});
    for (int i = 0; i <= 45; ++i) {
        double t = 0.1 * i;
        CHECK(rel_diff(xi(t), xn(t)) <= 1e-10);
    }
}

TEST_CASE("solve validates its inputs") {
    CHECK_THROWS_AS(solve(pure_decay(), -1.0), std::invalid_argument);
    ProblemSpec bad;
    bad.impulses = ImpulseSchedule::make({2.0, 1.0}, {1.0, 1.0});
    CHECK_THROWS_AS(solve(bad, 1.0), std::invalid_argument);
}

TEST_CASE("evaluation outside the computed range") {
    ProblemSpec spec = pure_decay();
    spec.history = FunctionDescriptor::constant(7.0);
    PiecewiseSolution x = solve(spec, 1.0, {1e-2, 3});
    CHECK(x(-0.5) == 7.0);  // delegated to history
    CHECK_THROWS_AS(x(1.5), std::out_of_range);
}

}  // TEST_SUITE
