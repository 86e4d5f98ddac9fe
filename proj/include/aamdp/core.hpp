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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace aamdp {

using ValueFunction = std::vector<double>;

inline double sup_norm(const ValueFunction& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double sup_norm_diff(const ValueFunction& a, const ValueFunction& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline constexpr double kSimplexTol = 1e-12;

inline bool is_probability_vector(const double* p, int n, double tol = kSimplexTol) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        if (!(p[i] >= 0.0) || !std::isfinite(p[i])) return false;
        sum += p[i];
    }
    return std::abs(sum - 1.0) <= tol;
}

/// States, actions, rewards, discount and initial distribution. The
/// transition law lives elsewhere; this is the part of the model that is
/// known exactly. Rewards are dense and may depend on the next state.
struct MdpInstance {
    int n_states = 0;
    int n_actions = 0;
    std::vector<double> rewards;       // [s][a][s'] flattened
    double discount = 0.0;             // gamma in [0,1)
    std::vector<double> initial_dist;  // mu over states

    double reward(int s, int a, int s2) const {
        return rewards[(static_cast<std::size_t>(s) * n_actions + a) * n_states + s2];
    }
    double& reward(int s, int a, int s2) {
        return rewards[(static_cast<std::size_t>(s) * n_actions + a) * n_states + s2];
    }

    double max_abs_reward() const {
        double m = 0.0;
        for (double r : rewards) m = std::max(m, std::abs(r));
        return m;
    }

    /// Bound on any discounted return: R_max / (1 - gamma).
    double value_bound() const { return max_abs_reward() / (1.0 - discount); }
};

struct TransitionKernel {
    int n_states = 0;
    int n_actions = 0;
    std::vector<double> p;  // [s][a][s'] flattened

    double prob(int s, int a, int s2) const {
        return p[(static_cast<std::size_t>(s) * n_actions + a) * n_states + s2];
    }
    double& prob(int s, int a, int s2) {
        return p[(static_cast<std::size_t>(s) * n_actions + a) * n_states + s2];
    }
};

struct StationaryPolicy {
    int n_states = 0;
    int n_actions = 0;
    std::vector<double> pi;  // [s][a] flattened

    double prob(int s, int a) const { return pi[static_cast<std::size_t>(s) * n_actions + a]; }
    double& prob(int s, int a) { return pi[static_cast<std::size_t>(s) * n_actions + a]; }

    const double* row(int s) const { return pi.data() + static_cast<std::size_t>(s) * n_actions; }

    static StationaryPolicy uniform(int n_states, int n_actions) {
        StationaryPolicy p{n_states, n_actions,
                           std::vector<double>(static_cast<std::size_t>(n_states) * n_actions,
                                               1.0 / n_actions)};
        return p;
    }

    static StationaryPolicy deterministic(int n_states, int n_actions,
                                          const std::vector<int>& action) {
        StationaryPolicy p{n_states, n_actions,
                           std::vector<double>(static_cast<std::size_t>(n_states) * n_actions, 0.0)};
        for (int s = 0; s < n_states; ++s) p.prob(s, action[s]) = 1.0;
        return p;
    }
};

struct ValidationResult {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
    std::string message() const {
        std::string out;
        for (const auto& v : violations) {
            if (!out.empty()) out += "; ";
            out += v;
        }
        return out;
    }
};

/// Diagnoses the instance invariants instead of throwing, so callers can
/// report every problem at once.
inline ValidationResult validate_instance(const MdpInstance& m) {
    ValidationResult r;
    if (m.n_states <= 0) r.violations.push_back("n_states must be positive");
    if (m.n_actions <= 0) r.violations.push_back("n_actions must be positive");
    if (!r.ok()) return r;
    if (!(m.discount >= 0.0 && m.discount < 1.0)) r.violations.push_back("discount out of range [0,1)");
    const std::size_t want = static_cast<std::size_t>(m.n_states) * m.n_actions * m.n_states;
    if (m.rewards.size() != want)
        r.violations.push_back("rewards tensor has wrong shape");
    else
        for (double x : m.rewards)
            if (!std::isfinite(x)) {
                r.violations.push_back("rewards contain a non-finite entry");
                break;
            }
    if (m.initial_dist.size() != static_cast<std::size_t>(m.n_states))
        r.violations.push_back("initial_dist has wrong length");
    else if (!is_probability_vector(m.initial_dist.data(), m.n_states))
        r.violations.push_back("initial_dist not a probability vector");
    return r;
}

inline ValidationResult validate_kernel(const TransitionKernel& k) {
    ValidationResult r;
    if (k.p.size() != static_cast<std::size_t>(k.n_states) * k.n_actions * k.n_states) {
        r.violations.push_back("kernel tensor has wrong shape");
        return r;
    }
    for (int s = 0; s < k.n_states; ++s)
        for (int a = 0; a < k.n_actions; ++a)
            if (!is_probability_vector(&k.p[(static_cast<std::size_t>(s) * k.n_actions + a) *
                                            k.n_states],
                                       k.n_states)) {
                std::ostringstream os;
                os << "kernel row (s=" << s << ",a=" << a << ") not a probability vector";
                r.violations.push_back(os.str());
            }
    return r;
}

inline ValidationResult validate_policy(const StationaryPolicy& p) {
    ValidationResult r;
    if (p.pi.size() != static_cast<std::size_t>(p.n_states) * p.n_actions) {
        r.violations.push_back("policy matrix has wrong shape");
        return r;
    }
    for (int s = 0; s < p.n_states; ++s)
        if (!is_probability_vector(p.row(s), p.n_actions)) {
            std::ostringstream os;
            os << "policy row (s=" << s << ") not a probability vector";
            r.violations.push_back(os.str());
        }
    return r;
}

namespace detail {
inline void require_dims(const StationaryPolicy& pi, const TransitionKernel& p,
                         const MdpInstance& m) {
    if (pi.n_states != m.n_states || pi.n_actions != m.n_actions || p.n_states != m.n_states ||
        p.n_actions != m.n_actions)
        throw std::invalid_argument("dimension mismatch between policy, kernel and instance");
}
}  // namespace detail

/// One application of the policy Bellman operator under a fixed kernel:
///   out(s) = sum_a pi(s,a) sum_{s'} P(s,a,s') (r(s,a,s') + gamma v(s')).
inline ValueFunction nominal_bellman(const ValueFunction& v, const StationaryPolicy& pi,
                                     const TransitionKernel& p, const MdpInstance& m) {
    detail::require_dims(pi, p, m);
    if (v.size() != static_cast<std::size_t>(m.n_states))
        throw std::invalid_argument("dimension mismatch in value function");
    ValueFunction out(m.n_states, 0.0);
    for (int s = 0; s < m.n_states; ++s) {
        double acc = 0.0;
        for (int a = 0; a < m.n_actions; ++a) {
            const double pa = pi.prob(s, a);
            if (pa == 0.0) continue;
            double inner = 0.0;
            for (int s2 = 0; s2 < m.n_states; ++s2)
                inner += p.prob(s, a, s2) * (m.reward(s, a, s2) + m.discount * v[s2]);
            acc += pa * inner;
        }
        out[s] = acc;
    }
    return out;
}

/// Exact policy value under a fixed kernel: solves (I - gamma P_pi) V = r_pi
/// by dense LU. The system is nonsingular for gamma < 1.
inline ValueFunction nominal_value(const StationaryPolicy& pi, const TransitionKernel& p,
                                   const MdpInstance& m) {
    detail::require_dims(pi, p, m);
    const int n = m.n_states;
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd b(n);
    for (int s = 0; s < n; ++s) {
        double rs = 0.0;
        for (int a = 0; a < m.n_actions; ++a) {
            const double pa = pi.prob(s, a);
            if (pa == 0.0) continue;
            for (int s2 = 0; s2 < n; ++s2) {
                const double pr = p.prob(s, a, s2);
                A(s, s2) -= m.discount * pa * pr;
                rs += pa * pr * m.reward(s, a, s2);
            }
        }
        b(s) = rs;
    }
    Eigen::VectorXd x = A.partialPivLu().solve(b);
    ValueFunction v(n);
    for (int s = 0; s < n; ++s) {
        if (!std::isfinite(x(s))) throw std::runtime_error("nominal_value: numeric breakdown");
        v[s] = x(s);
    }
    return v;
}

}  // namespace aamdp
