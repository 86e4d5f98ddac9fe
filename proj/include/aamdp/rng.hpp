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
#include <stdexcept>
#include <vector>

namespace aamdp {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based stream generator. A stream is fully determined by
/// (root seed, stream id), so parallel or reordered consumers draw
/// identical sequences. Output does not depend on the platform's
/// <random> distributions.
class Rng {
public:
    explicit Rng(std::uint64_t root_seed, std::uint64_t stream = 0) {
        // decorrelate (root, stream) pairs before use
        std::uint64_t s = root_seed;
        std::uint64_t mixed = splitmix64_next(s);
        s = mixed ^ (stream * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
        splitmix64_next(s);
        state_ = s;
    }

    std::uint64_t next_u64() { return splitmix64_next(state_); }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    int uniform_int(int n) {
        if (n <= 0) throw std::invalid_argument("uniform_int: n must be positive");
        return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
    }

    /// Index draw by inverse CDF over (not necessarily normalized) weights.
    int pick(const std::vector<double>& weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        double u = uniform() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            acc += weights[i];
            if (u < acc) return static_cast<int>(i);
        }
        return static_cast<int>(weights.size()) - 1;
    }

    /// Random point on the probability simplex of dimension n.
    std::vector<double> simplex_point(int n) {
        std::vector<double> x(n);
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            // -log(U) is Exp(1); normalizing yields a Dirichlet(1,..,1) draw
            double u = uniform();
            if (u < 1e-300) u = 1e-300;
            x[i] = -std::log(u);
            total += x[i];
        }
        for (double& v : x) v /= total;
        return x;
    }

private:
    std::uint64_t state_ = 0;
};

}  // namespace aamdp
