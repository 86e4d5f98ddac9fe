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

#include "aamdp/distribution.hpp"
#include "aamdp/rng.hpp"

using namespace aamdp;

TEST_CASE("canonical form sorts, merges and normalizes") {
    auto d = DiscreteDistribution::from_atoms({{3.0, 0.25}, {1.0, 0.5}, {3.0, 0.25}});
    REQUIRE(d.size() == 2);
    CHECK(d.atoms()[0].value == 1.0);
    CHECK(d.atoms()[0].weight == doctest::Approx(0.5));
    CHECK(d.atoms()[1].value == 3.0);
    CHECK(d.atoms()[1].weight == doctest::Approx(0.5));
}

TEST_CASE("zero-weight atoms are dropped, bad inputs rejected") {
    auto d = DiscreteDistribution::from_atoms({{0.0, 1.0}, {42.0, 0.0}});
    CHECK(d.size() == 1);
    CHECK(d.max_value() == 0.0);
    CHECK_THROWS(DiscreteDistribution::from_atoms({}));
    CHECK_THROWS(DiscreteDistribution::from_atoms({{0.0, 0.6}, {1.0, 0.6}}));
    CHECK_THROWS(DiscreteDistribution::from_atoms({{0.0, -0.5}, {1.0, 1.5}}));
    CHECK_THROWS(DiscreteDistribution::from_atoms({{std::nan(""), 1.0}}));
}

TEST_CASE("convolution: sum of two fair coins") {
    auto coin = DiscreteDistribution::from_atoms({{0.0, 0.5}, {1.0, 0.5}});
    auto sum = convolve_independent(coin, coin, Combine::Sum);
    REQUIRE(sum.size() == 3);
    CHECK(sum.atoms()[0].value == 0.0);
    CHECK(sum.atoms()[0].weight == doctest::Approx(0.25));
    CHECK(sum.atoms()[1].value == 1.0);
    CHECK(sum.atoms()[1].weight == doctest::Approx(0.5));
    CHECK(sum.atoms()[2].value == 2.0);
    CHECK(sum.atoms()[2].weight == doctest::Approx(0.25));
}

TEST_CASE("convolution identities") {
    auto d = DiscreteDistribution::from_atoms({{-1.0, 0.3}, {2.0, 0.7}});
    auto with_zero = convolve_independent(d, DiscreteDistribution::point_mass(0.0), Combine::Sum);
    auto with_one = convolve_independent(d, DiscreteDistribution::point_mass(1.0), Combine::Product);
    REQUIRE(with_zero.size() == d.size());
    REQUIRE(with_one.size() == d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        CHECK(with_zero.atoms()[i].value == doctest::Approx(d.atoms()[i].value));
        CHECK(with_one.atoms()[i].value == doctest::Approx(d.atoms()[i].value));
    }
}

TEST_CASE("convolution budget") {
    std::vector<Atom> atoms;
    for (int i = 0; i < 100; ++i) atoms.push_back({static_cast<double>(i), 0.01});
    auto d = DiscreteDistribution::from_atoms(atoms);
    CHECK_THROWS(convolve_independent(d, d, Combine::Sum, 5000));
}

TEST_CASE("w1 distance") {
    auto a = DiscreteDistribution::from_atoms({{0.0, 0.5}, {2.0, 0.5}});
    auto b = DiscreteDistribution::point_mass(1.0);
    CHECK(w1_distance(a, a) == doctest::Approx(0.0));
    CHECK(w1_distance(DiscreteDistribution::point_mass(0.0), DiscreteDistribution::point_mass(1.0)) ==
          doctest::Approx(1.0));
    CHECK(w1_distance(a, b) == doctest::Approx(1.0));
    CHECK(w1_distance(b, a) == doctest::Approx(1.0));
}

// brute-force quantile integral on a fine grid, as an independent check
static double w1_grid_oracle(const DiscreteDistribution& d1, const DiscreteDistribution& d2) {
    auto quantile = [](const DiscreteDistribution& d, double u) {
        double cum = 0.0;
        for (const Atom& a : d.atoms()) {
            cum += a.weight;
            if (u <= cum) return a.value;
        }
        return d.max_value();
    };
    const int n = 200000;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        double u = (i + 0.5) / n;
        total += std::abs(quantile(d1, u) - quantile(d2, u)) / n;
    }
    return total;
}

TEST_CASE("w1 matches grid oracle on random distributions") {
    for (int trial = 0; trial < 20; ++trial) {
        Rng rng(777, trial);
        auto random_dist = [&] {
            int n = 1 + rng.uniform_int(6);
            std::vector<Atom> atoms(n);
            auto w = rng.simplex_point(n);
            for (int i = 0; i < n; ++i) atoms[i] = {rng.uniform(-5.0, 5.0), w[i]};
            return DiscreteDistribution::from_atoms(atoms);
        };
        auto d1 = random_dist();
        auto d2 = random_dist();
        CHECK(w1_distance(d1, d2) == doctest::Approx(w1_grid_oracle(d1, d2)).epsilon(1e-3));
        CHECK(w1_distance(d1, d2) == doctest::Approx(w1_distance(d2, d1)));
    }
}

TEST_CASE("mixture flattens weighted components") {
    auto a = DiscreteDistribution::point_mass(0.0);
    auto b = DiscreteDistribution::point_mass(1.0);
    auto mix = mixture({{0.25, a}, {0.75, b}});
    REQUIRE(mix.size() == 2);
    CHECK(mix.atoms()[0].weight == doctest::Approx(0.25));
    CHECK(mix.atoms()[1].weight == doctest::Approx(0.75));
}

TEST_CASE("rng streams are order-independent") {
    Rng a(123, 7);
    Rng b(123, 7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    Rng c(123, 8);
    CHECK(c.next_u64() != Rng(123, 7).next_u64());
}
