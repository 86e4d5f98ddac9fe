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
#include <span>
#include <stdexcept>
#include <vector>

#include "aamdp/core.hpp"
#include "aamdp/distribution.hpp"
#include "aamdp/kernels.hpp"
#include "aamdp/matrix_game.hpp"
#include "aamdp/risk.hpp"
#include "aamdp/rng.hpp"

namespace aamdp {

/// How the per-state supremum over action rows is carried out.
struct GreedyStrategy {
    enum class Kind { DeterministicEnum, ExactGame, LocalSearch };
    Kind kind = Kind::ExactGame;
    int restarts = 4;        // extra random starts for LocalSearch
    double step_tol = 1e-10;  // sweep improvement stop for LocalSearch

    static GreedyStrategy deterministic_enum() { return {Kind::DeterministicEnum, 0, 0.0}; }
    static GreedyStrategy exact_game() { return {Kind::ExactGame, 0, 0.0}; }
    static GreedyStrategy local_search(int restarts = 4, double step_tol = 1e-10) {
        if (restarts < 1) throw std::invalid_argument("local_search: restarts must be >= 1");
        if (!(step_tol > 0.0)) throw std::invalid_argument("local_search: step_tol must be > 0");
        return {Kind::LocalSearch, restarts, step_tol};
    }
};

/// True when the strategy computes the exact per-state supremum for the
/// risk measure (rather than a certified lower bound).
inline bool strategy_exact_for(const GreedyStrategy& strategy, const RiskSpec& spec) {
    switch (spec.kind) {
        case RiskKind::Expectation:
        case RiskKind::EssSup:
            // the objective is linear (resp. a max of linear maps) in the
            // action row, so a deterministic action attains the supremum
            return strategy.kind != GreedyStrategy::Kind::LocalSearch;
        case RiskKind::EssInf:
            return strategy.kind == GreedyStrategy::Kind::ExactGame;
        default:
            return false;
    }
}

/// Scenario-action table q[k][a] = sum_{s'} B_k(a,s') (r(s,a,s') + gamma v(s'))
/// for one state. This is the dominant cost of operator sweeps, so it is
/// computed once and shared by the distribution, policy and greedy paths.
inline PayoffMatrix state_q_matrix(const ValueFunction& v, int s, const KernelDistribution& nu,
                                   const MdpInstance& m) {
    if (v.size() != static_cast<std::size_t>(m.n_states) || nu.n_states != m.n_states ||
        nu.n_actions != m.n_actions)
        throw std::invalid_argument("dimension mismatch in operator inputs");
    const auto& list = nu.scenarios[s];
    PayoffMatrix q(list.size(), std::vector<double>(m.n_actions, 0.0));
    for (std::size_t k = 0; k < list.size(); ++k)
        for (int a = 0; a < m.n_actions; ++a) {
            double acc = 0.0;
            for (int s2 = 0; s2 < m.n_states; ++s2)
                acc += list[k].prob(a, s2, m.n_states) * (m.reward(s, a, s2) + m.discount * v[s2]);
            q[k][a] = acc;
        }
    return q;
}

namespace detail {

inline DiscreteDistribution scenario_distribution(const PayoffMatrix& q,
                                                  const std::vector<KernelScenario>& list,
                                                  std::span<const double> pi_row) {
    std::vector<Atom> atoms(list.size());
    for (std::size_t k = 0; k < list.size(); ++k) {
        double val = 0.0;
        for (std::size_t a = 0; a < pi_row.size(); ++a) val += pi_row[a] * q[k][a];
        atoms[k] = {val, list[k].weight};
    }
    return DiscreteDistribution::from_atoms(std::move(atoms));
}

}  // namespace detail

/// Distribution of the one-step lookahead value at state s under the given
/// action row: one atom per scenario, canonicalized.
inline DiscreteDistribution state_value_distribution(const ValueFunction& v, int s,
                                                     std::span<const double> pi_row,
                                                     const KernelDistribution& nu,
                                                     const MdpInstance& m) {
    if (pi_row.size() != static_cast<std::size_t>(m.n_actions))
        throw std::invalid_argument("dimension mismatch in action row");
    return detail::scenario_distribution(state_q_matrix(v, s, nu, m), nu.scenarios[s], pi_row);
}

/// Policy operator: out(s) = rho(one-step lookahead distribution at s).
/// Only the time-0 marginal of the kernel law enters, so the operator is
/// the same function for static and resampled kernels.
inline ValueFunction apply_policy_operator(const ValueFunction& v, const StationaryPolicy& policy,
                                           const KernelDistribution& nu, const RiskSpec& spec,
                                           const MdpInstance& m) {
    if (policy.n_states != m.n_states || policy.n_actions != m.n_actions)
        throw std::invalid_argument("dimension mismatch in policy");
    ValueFunction out(m.n_states);
    for (int s = 0; s < m.n_states; ++s)
        out[s] = rho_eval(spec, state_value_distribution(
                              v, s, std::span<const double>(policy.row(s), m.n_actions), nu, m));
    return out;
}

struct GreedyRow {
    std::vector<double> pi_row;
    double value = 0.0;  // attained: equals the objective at pi_row
};

namespace detail {

inline double row_objective(const PayoffMatrix& q, const std::vector<KernelScenario>& list,
                            const RiskSpec& spec, const std::vector<double>& pi_row) {
    return rho_eval(spec, scenario_distribution(q, list, pi_row));
}

inline GreedyRow greedy_deterministic(const PayoffMatrix& q,
                                      const std::vector<KernelScenario>& list,
                                      const RiskSpec& spec) {
    const int na = static_cast<int>(q[0].size());
    GreedyRow best;
    best.value = -std::numeric_limits<double>::infinity();
    int best_a = 0;
    for (int a = 0; a < na; ++a) {
        std::vector<Atom> atoms(list.size());
        for (std::size_t k = 0; k < list.size(); ++k) atoms[k] = {q[k][a], list[k].weight};
        double val = rho_eval(spec, DiscreteDistribution::from_atoms(std::move(atoms)));
        if (val > best.value) {  // ties keep the lowest action index
            best.value = val;
            best_a = a;
        }
    }
    best.pi_row.assign(na, 0.0);
    best.pi_row[best_a] = 1.0;
    return best;
}

inline GreedyRow greedy_local_search(const PayoffMatrix& q,
                                     const std::vector<KernelScenario>& list, const RiskSpec& spec,
                                     const GreedyStrategy& strategy, int state_index) {
    const int na = static_cast<int>(q[0].size());
    auto objective = [&](const std::vector<double>& row) {
        return row_objective(q, list, spec, row);
    };

    std::vector<std::vector<double>> starts;
    for (int a = 0; a < na; ++a) {
        std::vector<double> row(na, 0.0);
        row[a] = 1.0;
        starts.push_back(std::move(row));
    }
    starts.push_back(std::vector<double>(na, 1.0 / na));
    Rng rng(0x6c5e9a3d17ULL, static_cast<std::uint64_t>(state_index));
    for (int r = 1; r < strategy.restarts; ++r) starts.push_back(rng.simplex_point(na));

    GreedyRow best;
    best.value = -std::numeric_limits<double>::infinity();
    for (auto& row : starts) {
        double val = objective(row);
        // projected coordinate descent: move mass between coordinate pairs
        for (int sweep = 0; sweep < 100; ++sweep) {
            double sweep_gain = 0.0;
            for (int i = 0; i < na; ++i)
                for (int j = 0; j < na; ++j) {
                    if (i == j || row[j] <= 0.0) continue;
                    // 1-D slice t in [0, row[j]]: grid probe then golden refine
                    auto slice = [&](double t) {
                        std::vector<double> cand = row;
                        cand[i] += t;
                        cand[j] -= t;
                        if (cand[j] < 0.0) cand[j] = 0.0;
                        return objective(cand);
                    };
                    const double tmax = row[j];
                    const int grid_n = 9;
                    double best_t = 0.0, best_f = val;
                    for (int g = 1; g <= grid_n; ++g) {
                        double t = tmax * g / grid_n;
                        double f = slice(t);
                        if (f > best_f) {
                            best_f = f;
                            best_t = t;
                        }
                    }
                    double lo = std::max(0.0, best_t - tmax / grid_n);
                    double hi = std::min(tmax, best_t + tmax / grid_n);
                    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
                    for (int it = 0; it < 40 && hi - lo > 1e-12; ++it) {
                        double c = hi - gr * (hi - lo);
                        double d = lo + gr * (hi - lo);
                        if (slice(c) >= slice(d)) hi = d; else lo = c;
                    }
                    double t_ref = 0.5 * (lo + hi);
                    double f_ref = slice(t_ref);
                    if (f_ref > best_f) {
                        best_f = f_ref;
                        best_t = t_ref;
                    }
                    if (best_f > val) {
                        sweep_gain += best_f - val;
                        row[i] += best_t;
                        row[j] -= best_t;
                        if (row[j] < 0.0) row[j] = 0.0;
                        val = best_f;
                    }
                }
            if (sweep_gain < strategy.step_tol) break;
        }
        if (val > best.value) {
            best.value = val;
            best.pi_row = row;
        }
    }
    // clean tiny negatives / drift before returning
    double total = 0.0;
    for (double& x : best.pi_row) {
        if (x < 0.0) x = 0.0;
        total += x;
    }
    for (double& x : best.pi_row) x /= total;
    best.value = objective(best.pi_row);
    return best;
}

}  // namespace detail

/// Per-state greedy optimization of rho over the action simplex.
///
/// ExactGame is exact for essinf (via the scenario/action matrix game) and
/// for esssup/expectation (deterministic action suffices); it rejects other
/// risk measures. DeterministicEnum enumerates one-hot rows only: exact for
/// esssup/expectation, otherwise a lower bound. LocalSearch is a multi-start
/// projected coordinate descent; its value is a certified lower bound on the
/// supremum. The returned value is always attained by the returned row.
inline GreedyRow greedy_row(const ValueFunction& v, int s, const KernelDistribution& nu,
                            const RiskSpec& spec, const GreedyStrategy& strategy,
                            const MdpInstance& m) {
    const PayoffMatrix q = state_q_matrix(v, s, nu, m);
    const auto& list = nu.scenarios[s];
    switch (strategy.kind) {
        case GreedyStrategy::Kind::ExactGame: {
            if (spec.kind == RiskKind::EssInf) {
                MatrixGameSolution game = solve_matrix_game(q);
                return {game.strategy, game.value};
            }
            if (spec.kind == RiskKind::EssSup || spec.kind == RiskKind::Expectation)
                return detail::greedy_deterministic(q, list, spec);
            throw std::invalid_argument("greedy_row: no exact strategy for risk measure " +
                                        spec.name());
        }
        case GreedyStrategy::Kind::DeterministicEnum:
            return detail::greedy_deterministic(q, list, spec);
        case GreedyStrategy::Kind::LocalSearch:
            return detail::greedy_local_search(q, list, spec, strategy, s);
    }
    throw std::logic_error("greedy_row: unreachable");
}

/// Optimal operator: stacks greedy_row over states. The returned policy
/// attains the returned value componentwise.
inline std::pair<ValueFunction, StationaryPolicy> apply_optimal_operator(
    const ValueFunction& v, const KernelDistribution& nu, const RiskSpec& spec,
    const GreedyStrategy& strategy, const MdpInstance& m) {
    ValueFunction out(m.n_states);
    StationaryPolicy policy{m.n_states, m.n_actions,
                            std::vector<double>(static_cast<std::size_t>(m.n_states) * m.n_actions,
                                                0.0)};
    for (int s = 0; s < m.n_states; ++s) {
        GreedyRow row = greedy_row(v, s, nu, spec, strategy, m);
        out[s] = row.value;
        for (int a = 0; a < m.n_actions; ++a) policy.prob(s, a) = row.pi_row[a];
    }
    return {std::move(out), std::move(policy)};
}

}  // namespace aamdp
