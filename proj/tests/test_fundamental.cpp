#include <cmath>

#include "common.hpp"
#include "doctest.h"
#include "idde/fundamental.hpp"

using namespace idde;
using namespace idde::testing;

TEST_SUITE("fundamental") {

TEST_CASE("fundamental solution of the reference problem") {
    ProblemSpec spec = third_lag_sixth_jumps(3);
    PiecewiseSolution X = fundamental_solution(spec, 1.0, {1e-3, 3});
    CHECK(std::abs(X(0.4) - 0.1) <= 1e-12);
    CHECK(std::abs(X(0.6) - (-0.1)) <= 1e-12);  // sign change confirmed
}

TEST_CASE("fundamental solution of plain exponential decay") {
    PiecewiseSolution X = fundamental_solution(pure_decay(), 1.0, {1e-3, 3});
    CHECK(std::abs(X(1.0) - std::exp(-1.0)) <= 1e-12);
}

TEST_CASE("columns start at one and vanish before their start") {
    ProblemSpec spec = half_coeff_lag03_b15(4);
    for (double s : {0.0, 0.7, 1.0, 2.35}) {
        PiecewiseSolution G = fundamental_function(spec, s, 5.0, {1e-2, 3});
        CHECK(G(s) == 1.0);
        if (s > 0.0) CHECK(G(s - 0.25) == 0.0);
        CHECK(G(std::max(0.0, s - 1e-6), Side::left) == 0.0);
    }
}

TEST_CASE("no impulse inside (s, t] makes G and C coincide") {
    ProblemSpec spec = half_coeff_lag03_b15(4);
    PiecewiseSolution G = fundamental_function(spec, 1.2, 1.9, {1e-3, 3});
    PiecewiseSolution C = cauchy_function(spec, 1.2, 1.9, {1e-3, 3});
    for (int i = 0; i <= 10; ++i) {
        double t = 1.2 + 0.07 * i;
        CHECK(std::abs(G(t) - C(t)) <= 1e-14);
    }
}

TEST_CASE("undelayed column crosses one doubling impulse in closed form") {
    ProblemSpec spec = pure_decay();
    spec.impulses = ImpulseSchedule::make({1.0}, {2.0});
    PiecewiseSolution G = fundamental_function(spec, 0.0, 2.0, {1e-3, 3});
    CHECK(std::abs(G(1.5) - 2.0 * std::exp(-1.5)) <= 1e-10);
}

TEST_CASE("Cauchy function of the reference equation by hand steps") {
    ProblemSpec spec = third_lag_sixth_jumps(3);
    PiecewiseSolution C = cauchy_function(spec, 0.0, 1.0, {1e-3, 3});
    const auto& nodes = C.mesh().nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        double t = nodes[i];
        if (t <= 1.0 / 3.0)
            CHECK(std::abs(C.value(i) - 1.0) <= 1e-13);
        else if (t <= 2.0 / 3.0)
            CHECK(std::abs(C.value(i) - (1.0 - (t - 1.0 / 3.0))) <= 1e-13);
    }
}

TEST_CASE("sub-1/e coefficient mass keeps the Cauchy function positive") {
    ProblemSpec spec = third_lag_sixth_jumps(3);  // 1 * 1/3 <= 1/e
    for (int i = 0; i < 10; ++i) {
        double s = 0.3 * i;
        PiecewiseSolution C = cauchy_function(spec, s, 3.0 + 1e-9, {1e-2, 3});
        for (std::size_t n = 1; n < C.mesh().size(); ++n) {
            CHECK(C.value(n) > 0.0);
            CHECK(C.left_value(n) > 0.0);
        }
    }
}

TEST_CASE("column with start zero equals the fundamental solution") {
    ProblemSpec spec = half_coeff_lag03_b15(3);
    PiecewiseSolution a = fundamental_solution(spec, 3.5, {1e-3, 3});
    PiecewiseSolution b = fundamental_function(spec, 0.0, 3.5, {1e-3, 3});
    REQUIRE(a.mesh().size() == b.mesh().size());
    for (std::size_t i = 0; i < a.mesh().size(); ++i) {
        CHECK(a.value(i) == b.value(i));
        CHECK(a.left_value(i) == b.left_value(i));
    }
}

TEST_CASE("table queries below the column start return exactly zero") {
    ProblemSpec spec = half_coeff_lag03_b15(3);
    auto table =
        FundamentalTable::build(spec, {0.0, 1.5, 2.5}, 3.5, {1e-2, 3});
    CHECK(table(1.0, 1) == 0.0);
    CHECK(table(2.49, 2) == 0.0);
    CHECK(table(1.5, 1) == 1.0);
}

TEST_CASE("parallel and serial table builds agree bitwise") {
    ProblemSpec spec = half_coeff_lag03_b15(3);
    std::vector<double> s_values{0.0, 0.5, 1.25, 2.0};
    auto par = FundamentalTable::build(spec, s_values, 3.5, {1e-2, 3}, true,
                                       true);
    auto ser = FundamentalTable::build(spec, s_values, 3.5, {1e-2, 3}, true,
                                       false);
    for (std::size_t j = 0; j < s_values.size(); ++j)
        for (std::size_t i = 0; i < par.column(j).mesh().size(); ++i)
            CHECK(par.column(j).value(i) == ser.column(j).value(i));
}

TEST_CASE("positive multipliers above one propagate positivity to G") {
    // C > 0 on the grid and B_j >= 1, so G > 0 on the same grid.
    ProblemSpec spec = half_coeff_lag03_b15(4);
    for (double s : {0.0, 0.6, 1.7, 3.2}) {
        PiecewiseSolution G = fundamental_function(spec, s, 4.5, {1e-2, 3});
        for (std::size_t n = 1; n < G.mesh().size(); ++n) {
            CHECK(G.value(n) > 0.0);
            CHECK(G.left_value(n) > 0.0);
        }
    }
}

TEST_CASE("lemma check: undelayed equation gives equality within tolerance") {
    ProblemSpec spec = pure_decay();
    spec.impulses = ImpulseSchedule::make({1.0, 2.0}, {1.3, 0.8});
    std::vector<Lemma1Triple> triples;
    Rng rng(7);
    for (int i = 0; i < 60; ++i) {
        double a = rng.uniform(0.0, 3.0), b = rng.uniform(0.0, 3.0),
               c = rng.uniform(0.0, 3.0);
        double lo = std::min({a, b, c}), hi = std::max({a, b, c});
        triples.push_back({lo, a + b + c - lo - hi, hi});
    }
    Lemma1Report rep = check_lemma1(spec, triples, {});
    CHECK(rep.status == Lemma1Report::Status::ok);
    CHECK(rep.passed());
    // Equality case G(t,s) = X(t)/X(s): both margins stay near the tolerance.
    CHECK(rep.worst_lower_bound_margin <= 2e-8);
}

TEST_CASE("lemma check holds on a delayed problem with positive G") {
    ProblemSpec spec = half_coeff_lag03_b15(5);
    std::vector<Lemma1Triple> triples;
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        double a = rng.uniform(0.0, 5.0), b = rng.uniform(0.0, 5.0),
               c = rng.uniform(0.0, 5.0);
        double lo = std::min({a, b, c}), hi = std::max({a, b, c});
        triples.push_back({lo, a + b + c - lo - hi, hi});
    }
    Lemma1Report rep = check_lemma1(spec, triples, {});
    CHECK(rep.status == Lemma1Report::Status::ok);
    CHECK(rep.submultiplicative_violations == 0);
    CHECK(rep.lower_bound_violations == 0);
}

TEST_CASE("lemma check reports sign-changing G as hypotheses-not-met") {
    ProblemSpec spec = third_lag_sixth_jumps(3);
    std::vector<Lemma1Triple> triples{{0.0, 0.3, 0.9}};
    Lemma1Report rep = check_lemma1(spec, triples, {});
    CHECK(rep.status == Lemma1Report::Status::hypotheses_not_met);
}

TEST_CASE("lemma check validates triple ordering") {
    ProblemSpec spec = half_coeff_lag03_b15(2);
    std::vector<Lemma1Triple> triples{{1.0, 0.5, 2.0}};
    CHECK_THROWS_AS(check_lemma1(spec, triples, {}), std::invalid_argument);
}

TEST_CASE("column start must lie inside the window") {
    ProblemSpec spec = pure_decay();
    CHECK_THROWS_AS(fundamental_function(spec, -0.5, 1.0, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(fundamental_function(spec, 1.0, 1.0, {}),
                    std::invalid_argument);
}

TEST_CASE("sign change of the reference fundamental solution is bracketed") {
    ProblemSpec spec = third_lag_sixth_jumps(3);
    PiecewiseSolution X = fundamental_solution(spec, 1.0, {1e-3, 3});
    auto brackets = sign_changes(X, 1e-9);
    REQUIRE(!brackets.empty());
    CHECK(brackets.front().lo <= 0.5);
    CHECK(brackets.front().hi >= 0.5 - 1e-9);
    CHECK(brackets.front().hi - brackets.front().lo <= 1e-9);
}

}  // TEST_SUITE
