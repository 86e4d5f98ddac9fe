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

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "aamdp/core.hpp"
#include "aamdp/rng.hpp"

namespace aamdp {

enum class SamplingMode { Static, Resampled };

inline const char* to_string(SamplingMode m) {
    return m == SamplingMode::Static ? "static" : "resampled";
}

/// One realization of a state's transition rows: a matrix of shape
/// actions x states, flattened row-major.
struct KernelScenario {
    double weight = 0.0;
    std::vector<double> block;

    double prob(int a, int s2, int n_states) const {
        return block[static_cast<std::size_t>(a) * n_states + s2];
    }
};

/// Finite-support distribution over transition kernels with product
/// structure: the joint law is the independent product of the per-state
/// scenario lists.
struct KernelDistribution {
    int n_states = 0;
    int n_actions = 0;
    std::vector<std::vector<KernelScenario>> scenarios;  // per state

    int scenario_count(int s) const { return static_cast<int>(scenarios[s].size()); }

    /// Product of per-state support sizes, as a double to survive overflow.
    double joint_support_size() const {
        double n = 1.0;
        for (const auto& list : scenarios) n *= static_cast<double>(list.size());
        return n;
    }

    /// Kernel assembled from one scenario choice per state.
    TransitionKernel assemble(const std::vector<int>& choice) const {
        TransitionKernel k{n_states, n_actions,
                           std::vector<double>(
                               static_cast<std::size_t>(n_states) * n_actions * n_states, 0.0)};
        for (int s = 0; s < n_states; ++s) {
            const KernelScenario& sc = scenarios[s][choice[s]];
            for (int a = 0; a < n_actions; ++a)
                for (int s2 = 0; s2 < n_states; ++s2)
                    k.prob(s, a, s2) = sc.prob(a, s2, n_states);
        }
        return k;
    }

    double joint_weight(const std::vector<int>& choice) const {
        double w = 1.0;
        for (int s = 0; s < n_states; ++s) w *= scenarios[s][choice[s]].weight;
        return w;
    }

    /// Scenario-weighted mean kernel.
    TransitionKernel mean_kernel() const {
        TransitionKernel k{n_states, n_actions,
                           std::vector<double>(
                               static_cast<std::size_t>(n_states) * n_actions * n_states, 0.0)};
        for (int s = 0; s < n_states; ++s)
            for (const KernelScenario& sc : scenarios[s])
                for (int a = 0; a < n_actions; ++a)
                    for (int s2 = 0; s2 < n_states; ++s2)
                        k.prob(s, a, s2) += sc.weight * sc.prob(a, s2, n_states);
        return k;
    }

    /// Independent per-state scenario draw.
    std::vector<int> sample_choice(Rng& rng) const {
        std::vector<int> choice(n_states);
        for (int s = 0; s < n_states; ++s) {
            if (scenarios[s].size() == 1) {
                choice[s] = 0;
                continue;
            }
            std::vector<double> w(scenarios[s].size());
            for (std::size_t k = 0; k < w.size(); ++k) w[k] = scenarios[s][k].weight;
            choice[s] = rng.pick(w);
        }
        return choice;
    }
};

inline ValidationResult validate_kernel_distribution(const KernelDistribution& nu) {
    ValidationResult r;
    if (nu.scenarios.size() != static_cast<std::size_t>(nu.n_states)) {
        r.violations.push_back("scenario list has wrong number of states");
        return r;
    }
    for (int s = 0; s < nu.n_states; ++s) {
        const auto& list = nu.scenarios[s];
        if (list.empty()) {
            std::ostringstream os;
            os << "state " << s << " has no scenarios";
            r.violations.push_back(os.str());
            continue;
        }
        double wsum = 0.0;
        for (std::size_t k = 0; k < list.size(); ++k) {
            const KernelScenario& sc = list[k];
            if (!(sc.weight > 0.0)) {
                std::ostringstream os;
                os << "state " << s << " scenario " << k << " has nonpositive weight";
                r.violations.push_back(os.str());
            }
            wsum += sc.weight;
            if (sc.block.size() != static_cast<std::size_t>(nu.n_actions) * nu.n_states) {
                std::ostringstream os;
                os << "state " << s << " scenario " << k << " block has wrong shape";
                r.violations.push_back(os.str());
                continue;
            }
            for (int a = 0; a < nu.n_actions; ++a)
                if (!is_probability_vector(&sc.block[static_cast<std::size_t>(a) * nu.n_states],
                                           nu.n_states)) {
                    std::ostringstream os;
                    os << "state " << s << " scenario " << k << " action " << a
                       << " row not a probability vector";
                    r.violations.push_back(os.str());
                }
        }
        if (std::abs(wsum - 1.0) > kSimplexTol) {
            std::ostringstream os;
            os << "state " << s << " scenario weights sum to " << wsum;
            r.violations.push_back(os.str());
        }
    }
    return r;
}

/// Visits every joint scenario assignment (odometer order) with its product
/// weight. The callback receives (choice, weight).
template <typename F>
void for_each_joint_scenario(const KernelDistribution& nu, F&& visit) {
    std::vector<int> choice(nu.n_states, 0);
    while (true) {
        visit(const_cast<const std::vector<int>&>(choice), nu.joint_weight(choice));
        int s = 0;
        while (s < nu.n_states) {
            if (++choice[s] < nu.scenario_count(s)) break;
            choice[s] = 0;
            ++s;
        }
        if (s == nu.n_states) break;
    }
}

}  // namespace aamdp
