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

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "aamdp/simplex.hpp"

namespace aamdp {

/// Payoff matrix of a zero-sum matrix game, payoff[k][a]: the column player
/// mixes over a and maximizes, the row player picks k and minimizes.
using PayoffMatrix = std::vector<std::vector<double>>;

struct MatrixGameSolution {
    std::vector<double> strategy;  // mixed column strategy
    double value = 0.0;            // min_k (Q x)_k at the returned strategy
};

namespace detail {

inline void check_payoff(const PayoffMatrix& q) {
    if (q.empty() || q[0].empty())
        throw std::invalid_argument("matrix game: payoff needs >= 1 row and column");
    for (const auto& row : q) {
        if (row.size() != q[0].size())
            throw std::invalid_argument("matrix game: ragged payoff matrix");
        for (double v : row)
            if (!std::isfinite(v)) throw std::invalid_argument("matrix game: non-finite payoff");
    }
}

inline double attained_value(const PayoffMatrix& q, const std::vector<double>& x) {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& row : q) {
        double dot = 0.0;
        for (std::size_t a = 0; a < x.size(); ++a) dot += row[a] * x[a];
        worst = std::min(worst, dot);
    }
    return worst;
}

}  // namespace detail

inline MatrixGameSolution solve_matrix_game_mw(const PayoffMatrix& q, double tol,
                                               long max_iters);

/// Solves max_{x in simplex} min_k (Q x)_k by the standard LP reduction:
/// variables (x, v+, v-), maximize v = v+ - v- subject to v <= (Q x)_k and
/// sum x = 1. The returned value is recomputed at the returned strategy so
/// it is attained exactly.
inline MatrixGameSolution solve_matrix_game(const PayoffMatrix& q, double tol = 1e-9) {
    detail::check_payoff(q);
    const int k = static_cast<int>(q.size());
    const int na = static_cast<int>(q[0].size());
    LpProblem p;
    p.n_vars = na + 2;  // x, v+, v-
    p.c.assign(p.n_vars, 0.0);
    p.c[na] = -1.0;  // min -v+ + v-  ==  max v
    p.c[na + 1] = 1.0;
    for (int i = 0; i < k; ++i) {
        std::vector<double> row(p.n_vars, 0.0);
        for (int a = 0; a < na; ++a) row[a] = -q[i][a];
        row[na] = 1.0;
        row[na + 1] = -1.0;
        p.rows.push_back(std::move(row));
        p.rels.push_back(Rel::Le);
        p.rhs.push_back(0.0);
    }
    std::vector<double> sum_row(p.n_vars, 0.0);
    for (int a = 0; a < na; ++a) sum_row[a] = 1.0;
    p.rows.push_back(std::move(sum_row));
    p.rels.push_back(Rel::Eq);
    p.rhs.push_back(1.0);

    LpResult lp = solve_lp(p);
    MatrixGameSolution sol;
    if (lp.status == LpStatus::Optimal) {
        sol.strategy.assign(lp.x.begin(), lp.x.begin() + na);
        double total = 0.0;
        for (double v : sol.strategy) total += std::max(v, 0.0);
        for (double& v : sol.strategy) v = std::max(v, 0.0) / total;
        sol.value = detail::attained_value(q, sol.strategy);
        return sol;
    }
    // numeric breakdown in the LP: fall back to multiplicative weights
    return solve_matrix_game_mw(q, tol, 100000);
}

/// Multiplicative-weights solver. Runs the no-regret dynamic on the
/// minimizing row player against exact best responses and returns the
/// averaged column strategy once the duality gap drops below tol (iteration
/// cap 1e5). Also usable as an independent cross-check of the LP path.
inline MatrixGameSolution solve_matrix_game_mw(const PayoffMatrix& q, double tol = 1e-6,
                                               long max_iters = 100000) {
    detail::check_payoff(q);
    const int k = static_cast<int>(q.size());
    const int na = static_cast<int>(q[0].size());
    double lo = q[0][0], hi = q[0][0];
    for (const auto& row : q)
        for (double v : row) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    const double range = std::max(hi - lo, 1e-300);

    std::vector<double> logw(k, 0.0);            // adversary weights (log space)
    std::vector<double> x_avg(na, 0.0);          // averaged best responses
    std::vector<double> row_mix_sum(k, 0.0);     // accumulated adversary mixtures
    MatrixGameSolution best;
    best.value = -std::numeric_limits<double>::infinity();
    for (long t = 1; t <= max_iters; ++t) {
        double eta = std::sqrt(8.0 * std::log(std::max(k, 2)) / static_cast<double>(t));
        double logw_max = *std::max_element(logw.begin(), logw.end());
        std::vector<double> pk(k);
        double z = 0.0;
        for (int i = 0; i < k; ++i) {
            pk[i] = std::exp(logw[i] - logw_max);
            z += pk[i];
        }
        for (int i = 0; i < k; ++i) pk[i] /= z;
        // column best response to the adversary mixture
        int best_a = 0;
        double best_payoff = -std::numeric_limits<double>::infinity();
        for (int a = 0; a < na; ++a) {
            double dot = 0.0;
            for (int i = 0; i < k; ++i) dot += pk[i] * q[i][a];
            if (dot > best_payoff) {
                best_payoff = dot;
                best_a = a;
            }
        }
        x_avg[best_a] += 1.0;
        for (int i = 0; i < k; ++i) {
            row_mix_sum[i] += pk[i];
            // the adversary loses the payoff it concedes; normalize to [0,1]
            logw[i] -= eta * (q[i][best_a] - lo) / range;
        }
        if (t % 100 == 0 || t == max_iters) {
            std::vector<double> x(na);
            for (int a = 0; a < na; ++a) x[a] = x_avg[a] / static_cast<double>(t);
            double lower = detail::attained_value(q, x);
            double upper = -std::numeric_limits<double>::infinity();
            for (int a = 0; a < na; ++a) {
                double dot = 0.0;
                for (int i = 0; i < k; ++i) dot += row_mix_sum[i] / static_cast<double>(t) * q[i][a];
                upper = std::max(upper, dot);
            }
            if (lower > best.value) {
                best.value = lower;
                best.strategy = x;
            }
            if (upper - best.value <= tol) return best;
        }
    }
    if (best.strategy.empty()) throw std::runtime_error("matrix game: solver made no progress");
    return best;
}

}  // namespace aamdp
