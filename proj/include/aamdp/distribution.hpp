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
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace aamdp {

struct Atom {
    double value = 0.0;
    double weight = 0.0;
};

/// Finite-support distribution on the real line, stored in canonical form:
/// atoms sorted ascending by value, values closer than the merge tolerance
/// coalesced, zero weights dropped, weights summing to one.
class DiscreteDistribution {
public:
    static constexpr double kMergeTol = 1e-12;
    static constexpr double kWeightSumTol = 1e-9;

    DiscreteDistribution() = default;

    /// Builds the canonical form. Weights must be nonnegative and sum to 1
    /// within kWeightSumTol; they are renormalized exactly afterwards.
    static DiscreteDistribution from_atoms(std::vector<Atom> atoms) {
        DiscreteDistribution d;
        d.assign(std::move(atoms));
        return d;
    }

    static DiscreteDistribution point_mass(double value) {
        return from_atoms({{value, 1.0}});
    }

    /// Equal-weight empirical distribution of a sample set.
    static DiscreteDistribution from_samples(const std::vector<double>& xs) {
        if (xs.empty()) throw std::invalid_argument("from_samples: empty sample set");
        std::vector<Atom> atoms;
        atoms.reserve(xs.size());
        const double w = 1.0 / static_cast<double>(xs.size());
        for (double x : xs) atoms.push_back({x, w});
        return from_atoms(std::move(atoms));
    }

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }

    double min_value() const { return atoms_.front().value; }
    double max_value() const { return atoms_.back().value; }

    double mean() const {
        double m = 0.0;
        for (const Atom& a : atoms_) m += a.weight * a.value;
        return m;
    }

    /// Image distribution under a pointwise map.
    DiscreteDistribution map(const std::function<double(double)>& f) const {
        std::vector<Atom> out;
        out.reserve(atoms_.size());
        for (const Atom& a : atoms_) out.push_back({f(a.value), a.weight});
        return from_atoms(std::move(out));
    }

    /// a*X + b.
    DiscreteDistribution affine(double a, double b) const {
        return map([a, b](double x) { return a * x + b; });
    }

private:
    void assign(std::vector<Atom> atoms) {
        if (atoms.empty()) throw std::invalid_argument("distribution: empty atom list");
        double sum = 0.0;
        for (const Atom& a : atoms) {
            if (!std::isfinite(a.value)) throw std::invalid_argument("distribution: non-finite atom value");
            if (!(a.weight >= -1e-15)) throw std::invalid_argument("distribution: negative atom weight");
            sum += a.weight;
        }
        if (std::abs(sum - 1.0) > kWeightSumTol)
            throw std::invalid_argument("distribution: weights sum to " + std::to_string(sum) +
                                        ", expected 1");
        std::sort(atoms.begin(), atoms.end(),
                  [](const Atom& a, const Atom& b) { return a.value < b.value; });
        atoms_.clear();
        atoms_.reserve(atoms.size());
        for (const Atom& a : atoms) {
            if (a.weight <= 0.0) continue;
            if (!atoms_.empty() && a.value - atoms_.back().value <= kMergeTol) {
                atoms_.back().weight += a.weight;
            } else {
                atoms_.push_back(a);
            }
        }
        if (atoms_.empty()) throw std::invalid_argument("distribution: no atom has positive weight");
        double total = 0.0;
        for (const Atom& a : atoms_) total += a.weight;
        for (Atom& a : atoms_) a.weight /= total;
    }

    std::vector<Atom> atoms_;
};

enum class Combine { Sum, Product };

/// Distribution of X (+|*) Y for independent X, Y: the product measure on
/// atom pairs, canonicalized. Throws if the pair count exceeds max_atoms.
inline DiscreteDistribution convolve_independent(const DiscreteDistribution& x,
                                                 const DiscreteDistribution& y, Combine combine,
                                                 std::size_t max_atoms = 1u << 20) {
    if (x.size() * y.size() > max_atoms)
        throw std::invalid_argument("convolve_independent: atom budget exceeded");
    std::vector<Atom> out;
    out.reserve(x.size() * y.size());
    for (const Atom& ax : x.atoms())
        for (const Atom& ay : y.atoms()) {
            double v = combine == Combine::Sum ? ax.value + ay.value : ax.value * ay.value;
            out.push_back({v, ax.weight * ay.weight});
        }
    return DiscreteDistribution::from_atoms(std::move(out));
}

/// Mixture of components with the given (positive, summing to one) weights.
inline DiscreteDistribution mixture(
    const std::vector<std::pair<double, DiscreteDistribution>>& components) {
    std::vector<Atom> out;
    for (const auto& [w, d] : components)
        for (const Atom& a : d.atoms()) out.push_back({a.value, w * a.weight});
    return DiscreteDistribution::from_atoms(std::move(out));
}

/// Wasserstein-1 distance, computed exactly as the integral of
/// |F1^-1(u) - F2^-1(u)| over u in (0,1) by merging quantile breakpoints.
inline double w1_distance(const DiscreteDistribution& d1, const DiscreteDistribution& d2) {
    const auto& a1 = d1.atoms();
    const auto& a2 = d2.atoms();
    const double inf = std::numeric_limits<double>::infinity();
    std::size_t i = 0, j = 0;
    double c1 = a1[0].weight;  // CDF at the end of the current atom
    double c2 = a2[0].weight;
    double u = 0.0;
    double total = 0.0;
    while (u < 1.0) {
        // the last atom extends to u = 1 regardless of rounding in the sums
        double b1 = (i + 1 < a1.size()) ? c1 : inf;
        double b2 = (j + 1 < a2.size()) ? c2 : inf;
        double next = std::min({b1, b2, 1.0});
        total += (next - u) * std::abs(a1[i].value - a2[j].value);
        u = next;
        if (b1 <= next) {
            ++i;
            c1 += a1[i].weight;
        }
        if (b2 <= next) {
            ++j;
            c2 += a2[j].weight;
        }
    }
    return total;
}

}  // namespace aamdp
