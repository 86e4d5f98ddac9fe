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
#include <limits>
#include <stdexcept>
#include <vector>

namespace aamdp {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpResult {
    LpStatus status = LpStatus::IterationLimit;
    std::vector<double> x;
    double objective = 0.0;
};

enum class Rel { Le, Eq, Ge };

/// min c.x  subject to  rows[i].x (<=|=|>=) rhs[i],  x >= 0.
struct LpProblem {
    int n_vars = 0;
    std::vector<double> c;
    std::vector<std::vector<double>> rows;
    std::vector<Rel> rels;
    std::vector<double> rhs;
};

/// Dense two-phase primal simplex on the full tableau. Anti-cycling by
/// Bland's rule: smallest eligible entering column, ratio ties broken by
/// smallest basic variable index. Intended for desk-scale problems
/// (hundreds of rows/columns).
class SimplexSolver {
public:
    static constexpr double kReducedCostTol = 1e-9;
    static constexpr double kPivotTol = 1e-11;

    LpResult solve(const LpProblem& p, long max_iters = 100000) {
        const int m = static_cast<int>(p.rows.size());
        int n = p.n_vars;

        // count extra columns: one slack or surplus per inequality, one
        // artificial per >= or = row (after sign normalization)
        std::vector<int> slack_col(m, -1), art_col(m, -1);
        std::vector<std::vector<double>> rows = p.rows;
        std::vector<double> rhs = p.rhs;
        std::vector<Rel> rels = p.rels;
        for (int i = 0; i < m; ++i) {
            if (rhs[i] < 0.0) {
                for (double& v : rows[i]) v = -v;
                rhs[i] = -rhs[i];
                rels[i] = rels[i] == Rel::Le ? Rel::Ge : (rels[i] == Rel::Ge ? Rel::Le : Rel::Eq);
            }
        }
        int total = n;
        for (int i = 0; i < m; ++i)
            if (rels[i] != Rel::Eq) slack_col[i] = total++;
        int first_art = total;
        for (int i = 0; i < m; ++i)
            if (rels[i] != Rel::Le) art_col[i] = total++;

        tableau_.assign(m, std::vector<double>(total + 1, 0.0));
        basis_.assign(m, -1);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) tableau_[i][j] = rows[i][j];
            if (slack_col[i] >= 0) tableau_[i][slack_col[i]] = rels[i] == Rel::Le ? 1.0 : -1.0;
            if (art_col[i] >= 0) tableau_[i][art_col[i]] = 1.0;
            tableau_[i][total] = rhs[i];
            basis_[i] = art_col[i] >= 0 ? art_col[i] : slack_col[i];
        }
        n_cols_ = total;

        LpResult result;
        if (first_art < total) {
            std::vector<double> phase1(total, 0.0);
            for (int j = first_art; j < total; ++j) phase1[j] = 1.0;
            LpStatus st = run(phase1, total, max_iters);
            if (st != LpStatus::Optimal) {
                result.status = st;
                return result;
            }
            double scale = 1.0;
            for (int i = 0; i < m; ++i) scale = std::max(scale, std::abs(tableau_[i][total]));
            if (objective_value(phase1) > 1e-7 * scale) {
                result.status = LpStatus::Infeasible;
                return result;
            }
            // pivot any artificial still in the basis onto a real column
            for (int i = 0; i < m; ++i) {
                if (basis_[i] < first_art) continue;
                int col = -1;
                for (int j = 0; j < first_art; ++j)
                    if (std::abs(tableau_[i][j]) > kPivotTol) {
                        col = j;
                        break;
                    }
                if (col >= 0) pivot(i, col);
                // a fully zero row is redundant; the artificial stays basic
                // at level zero and never re-enters with barred columns
            }
        }

        std::vector<double> phase2(total, 0.0);
        for (int j = 0; j < n; ++j) phase2[j] = p.c[j];
        LpStatus st = run(phase2, first_art, max_iters);
        result.status = st;
        if (st != LpStatus::Optimal) return result;
        result.x.assign(n, 0.0);
        for (int i = 0; i < m; ++i)
            if (basis_[i] < n) result.x[basis_[i]] = tableau_[i][n_cols_];
        result.objective = 0.0;
        for (int j = 0; j < n; ++j) result.objective += p.c[j] * result.x[j];
        return result;
    }

private:
    double objective_value(const std::vector<double>& cost) const {
        double obj = 0.0;
        for (std::size_t i = 0; i < basis_.size(); ++i)
            obj += cost[basis_[i]] * tableau_[i][n_cols_];
        return obj;
    }

    // reduced cost of column j for the given cost vector
    double reduced_cost(const std::vector<double>& cost, int j) const {
        double r = cost[j];
        for (std::size_t i = 0; i < basis_.size(); ++i)
            r -= cost[basis_[i]] * tableau_[i][j];
        return r;
    }

    LpStatus run(const std::vector<double>& cost, int usable_cols, long max_iters) {
        const int m = static_cast<int>(tableau_.size());
        for (long iter = 0; iter < max_iters; ++iter) {
            int enter = -1;
            for (int j = 0; j < usable_cols; ++j) {
                if (reduced_cost(cost, j) < -kReducedCostTol) {
                    enter = j;
                    break;  // Bland: smallest index
                }
            }
            if (enter < 0) return LpStatus::Optimal;
            int leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m; ++i) {
                double a = tableau_[i][enter];
                if (a > kPivotTol) {
                    double ratio = tableau_[i][n_cols_] / a;
                    if (ratio < best_ratio - 1e-12 ||
                        (ratio < best_ratio + 1e-12 && (leave < 0 || basis_[i] < basis_[leave]))) {
                        best_ratio = ratio;
                        leave = i;
                    }
                }
            }
            if (leave < 0) return LpStatus::Unbounded;
            pivot(leave, enter);
        }
        return LpStatus::IterationLimit;
    }

    void pivot(int row, int col) {
        const int m = static_cast<int>(tableau_.size());
        double piv = tableau_[row][col];
        for (int j = 0; j <= n_cols_; ++j) tableau_[row][j] /= piv;
        tableau_[row][col] = 1.0;
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            double f = tableau_[i][col];
            if (f == 0.0) continue;
            for (int j = 0; j <= n_cols_; ++j) tableau_[i][j] -= f * tableau_[row][j];
            tableau_[i][col] = 0.0;
        }
        basis_[row] = col;
    }

    std::vector<std::vector<double>> tableau_;
    std::vector<int> basis_;
    int n_cols_ = 0;
};

inline LpResult solve_lp(const LpProblem& p, long max_iters = 100000) {
    SimplexSolver solver;
    return solver.solve(p, max_iters);
}

}  // namespace aamdp
