// Copyright 2026 The aamdp authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "aamdp/matrix_game.hpp"
#include "aamdp/rng.hpp"
#include "aamdp/simplex.hpp"

using namespace aamdp;

namespace {

// textbook 2x2 solution: the maximizer mixes columns; evaluate the pure
// options and the interior crossing of the two row payoffs
double game_2x2_oracle(const PayoffMatrix& q) {
    auto worst = [&](double x) {
        double r0 = q[0][0] * x + q[0][1] * (1.0 - x);
        double r1 = q[1][0] * x + q[1][1] * (1.0 - x);
        return std::min(r0, r1);
    };
    double best = std::max(worst(0.0), worst(1.0));
    double denom = q[0][0] - q[0][1] - q[1][0] + q[1][1];
    if (std::abs(denom) > 1e-12) {
        double x = (q[1][1] - q[0][1]) / denom;
        if (x >= 0.0 && x <= 1.0) best = std::max(best, worst(x));
    }
    return best;
}

}  // namespace

TEST_CASE("single row: deterministic argmax column") {
    MatrixGameSolution s = solve_matrix_game({{1.0, 3.0, 2.0}});
    CHECK(s.value == doctest::Approx(3.0));
    CHECK(s.strategy[1] == doctest::Approx(1.0));
}

TEST_CASE("matching pennies") {
    MatrixGameSolution s = solve_matrix_game({{1.0, -1.0}, {-1.0, 1.0}});
    CHECK(std::abs(s.value) < 1e-10);
    CHECK(s.strategy[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(s.strategy[1] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("identity payoff gives the uniform mix") {
    MatrixGameSolution s = solve_matrix_game({{1.0, 0.0}, {0.0, 1.0}});
    CHECK(s.value == doctest::Approx(0.5));
    CHECK(s.strategy[0] == doctest::Approx(0.5));
}

TEST_CASE("random 2x2 games match the closed form") {
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng(808, trial);
        PayoffMatrix q = {{rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)},
                          {rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)}};
        MatrixGameSolution s = solve_matrix_game(q);
        CHECK(std::abs(s.value - game_2x2_oracle(q)) < 1e-8);
        // the strategy attains the reported value
        CHECK(detail::attained_value(q, s.strategy) == doctest::Approx(s.value).epsilon(1e-12));
    }
}

TEST_CASE("lp and multiplicative weights agree on random 3x4 games") {
    for (int trial = 0; trial < 20; ++trial) {
        Rng rng(909, trial);
        PayoffMatrix q(3, std::vector<double>(4));
        for (auto& row : q)
            for (double& v : row) v = rng.uniform(-2.0, 2.0);
        MatrixGameSolution lp = solve_matrix_game(q);
        MatrixGameSolution mw = solve_matrix_game_mw(q, 1e-5, 100000);
        CHECK(std::abs(lp.value - mw.value) < 1e-4);
        CHECK(lp.value >= mw.value - 1e-9);  // lp is exact, mw a lower bound
    }
}

TEST_CASE("game value is monotone in the payoff matrix") {
    for (int trial = 0; trial < 30; ++trial) {
        Rng rng(1010, trial);
        PayoffMatrix q(2 + rng.uniform_int(3), std::vector<double>(2 + rng.uniform_int(3)));
        for (auto& row : q)
            for (double& v : row) v = rng.uniform(-1.0, 1.0);
        PayoffMatrix q2 = q;
        for (auto& row : q2)
            for (double& v : row) v += rng.uniform(0.0, 0.5);
        CHECK(solve_matrix_game(q2).value >= solve_matrix_game(q).value - 1e-10);
    }
}

TEST_CASE("simplex solves a textbook lp") {
    // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  ->  (2, 6), 36
    LpProblem p;
    p.n_vars = 2;
    p.c = {-3.0, -5.0};
    p.rows = {{1.0, 0.0}, {0.0, 2.0}, {3.0, 2.0}};
    p.rels = {Rel::Le, Rel::Le, Rel::Le};
    p.rhs = {4.0, 12.0, 18.0};
    LpResult r = solve_lp(p);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.x[0] == doctest::Approx(2.0));
    CHECK(r.x[1] == doctest::Approx(6.0));
    CHECK(r.objective == doctest::Approx(-36.0));
}

TEST_CASE("simplex handles >= and = rows via phase one") {
    // min x + y s.t. x + y >= 2, x - y = 1  ->  (1.5, 0.5)
    LpProblem p;
    p.n_vars = 2;
    p.c = {1.0, 1.0};
    p.rows = {{1.0, 1.0}, {1.0, -1.0}};
    p.rels = {Rel::Ge, Rel::Eq};
    p.rhs = {2.0, 1.0};
    LpResult r = solve_lp(p);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.x[0] == doctest::Approx(1.5));
    CHECK(r.x[1] == doctest::Approx(0.5));
}

TEST_CASE("simplex reports infeasible and unbounded problems") {
    LpProblem inf;
    inf.n_vars = 1;
    inf.c = {1.0};
    inf.rows = {{1.0}, {1.0}};
    inf.rels = {Rel::Le, Rel::Ge};
    inf.rhs = {1.0, 2.0};
    CHECK(solve_lp(inf).status == LpStatus::Infeasible);

    LpProblem unb;
    unb.n_vars = 1;
    unb.c = {-1.0};
    unb.rows = {{1.0}};
    unb.rels = {Rel::Ge};
    unb.rhs = {0.0};
    CHECK(solve_lp(unb).status == LpStatus::Unbounded);
}

TEST_CASE("payoff validation") {
    CHECK_THROWS(solve_matrix_game({}));
    CHECK_THROWS(solve_matrix_game({{1.0, 2.0}, {1.0}}));
    CHECK_THROWS(solve_matrix_game({{std::numeric_limits<double>::infinity()}}));
}
