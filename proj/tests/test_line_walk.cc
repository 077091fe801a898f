// Copyright 2026 The qwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>

#include "qwalk/line_walk.h"
#include "qwalk/sampling.h"
#include "test_util.h"

namespace qwalk {
namespace {

TEST(Step, HadamardFromLeft) {
    const double h = 1.0 / std::sqrt(2.0);
    const LineWalkState s = step(LineWalkState::localized(0, 1.0, 0.0), CoinMap::homogeneous(Coin::hadamard()));
    EXPECT_NEAR(std::abs(s.at(-1)(0) - h), 0.0, 1e-16);
    EXPECT_EQ(s.at(-1)(1), Complex(0.0));
    EXPECT_NEAR(std::abs(s.at(1)(1) - h), 0.0, 1e-16);
    EXPECT_EQ(s.at(1)(0), Complex(0.0));
    EXPECT_EQ(s.at(0), Vector2c::Zero());
    EXPECT_EQ(s.time(), 1);
}

// (0,-1;1,0): |0,L> -> |1,R> -> -|0,L>.
TEST(Step, ReflectingCoinReturnsInTwoSteps) {
    const CoinMap coins = CoinMap::homogeneous(Coin::reflecting());
    const LineWalkState one = step(LineWalkState::localized(0, 1.0, 0.0), coins);
    EXPECT_EQ(one.at(1)(1), Complex(1.0));
    EXPECT_NEAR(one.norm_squared(), 1.0, 0.0);
    const LineWalkState two = step(one, coins);
    EXPECT_EQ(two.at(0)(0), Complex(-1.0));
    EXPECT_EQ(two.at(0)(1), Complex(0.0));
    for (std::int64_t n = two.first_position(); n <= two.last_position(); ++n) {
        if (n != 0) {
            EXPECT_EQ(two.at(n), Vector2c::Zero());
        }
    }
    EXPECT_DOUBLE_EQ(two.norm_squared(), 1.0);
}

TEST(Step, MatchesDenseRingOperator) {
    Rng rng(3);
    std::vector<Coin> table;
    for (int i = 0; i < 9; ++i) table.push_back(random_coin(rng));
    const CoinMap coins = CoinMap::from_rule([&table](std::int64_t n) {
        return table[static_cast<std::size_t>(((n % 9) + 9) % 9)];
    });
    const int sites = 90;  // 9 | 90 so ring coins agree with the line
    testing::DenseRing ring{sites, [&table](int n) { return table[static_cast<std::size_t>(n % 9)].matrix(); }};
    const MatrixXc w = ring.operator_matrix();

    const auto [a, b] = random_unit_pair(rng);
    LineWalkState s = LineWalkState::localized(0, a, b);
    VectorXc v = testing::to_ring(s, sites, 0);
    for (int t = 0; t < 40; ++t) {
        s = step(s, coins);
        v = w * v;
        EXPECT_LE((testing::to_ring(s, sites, 0) - v).cwiseAbs().maxCoeff(), 1e-13) << "t=" << t + 1;
    }
}

TEST(Step, PreservesNormOverThousandSteps) {
    Rng rng(17);
    for (int delta : {1, 3, 5}) {
        const CoinMap coins = CoinMap::periodic(random_periodic_spec(rng, delta));
        const auto [a, b] = random_unit_pair(rng);
        const LineWalkState s = evolve(LineWalkState::localized(2, a, b), coins, 1000);
        EXPECT_NEAR(s.norm_squared(), 1.0, 1e-11);
        EXPECT_EQ(s.time(), 1000);
    }
}

TEST(RotationCoin, QuarterTurnsAreExact) {
    EXPECT_EQ(rotation_coin(2, 4), Coin::reflecting());
    EXPECT_EQ(rotation_coin(0, 4), Coin::identity());
    const Coin half = rotation_coin(4, 4);
    EXPECT_EQ(half(0, 0), Complex(-1.0));
    EXPECT_EQ(half(0, 1), Complex(0.0));
    EXPECT_EQ(rotation_coin(-2, 4)(0, 0), Complex(0.0));
    EXPECT_NEAR(rotation_coin(1, 3)(0, 0).real(), 0.5, 1e-15);
    EXPECT_NEAR(rotation_coin(1, 3)(1, 0).real(), std::sqrt(3.0) / 2.0, 1e-15);
    EXPECT_EQ(rotation_coin(7, 3), rotation_coin(1, 3));
    EXPECT_THROW(rotation_coin(0, 0), std::invalid_argument);
}

TEST(PeriodicCoinSpec, ValidatesAndShifts) {
    EXPECT_THROW(PeriodicCoinSpec(2, std::vector<Coin>(3)), std::invalid_argument);
    EXPECT_THROW(PeriodicCoinSpec(0, {}), std::invalid_argument);
    const PeriodicCoinSpec spec = periodic_spec(3);
    const PeriodicCoinSpec shifted = spec.shifted(1);
    for (int n = -7; n < 7; ++n) EXPECT_EQ(shifted.at(n), spec.at(n + 1));
    EXPECT_EQ(spec.at(-1), spec.at(5));
}

TEST(CoinMap, RulesAndPeriods) {
    const CoinMap rule = CoinMap::from_rule([](std::int64_t n) { return n > 0 ? Coin::hadamard() : Coin::identity(); });
    EXPECT_EQ(rule.at(3), Coin::hadamard());
    EXPECT_EQ(rule.at(-3), Coin::identity());
    EXPECT_FALSE(rule.period().has_value());
    EXPECT_EQ(periodic_coin(5).period(), 10);
    EXPECT_THROW(CoinMap::from_rule([](std::int64_t) { return Coin(); }, 0), std::invalid_argument);
}

TEST(Moments, HandDistribution) {
    const DistributionOverLine d(-1, {0.25, 0.0, 0.75});
    const Moments m = moments(d);
    EXPECT_DOUBLE_EQ(m.mean, 0.5);
    EXPECT_DOUBLE_EQ(m.second_moment, 1.0);
    EXPECT_DOUBLE_EQ(m.variance, 0.75);
    EXPECT_DOUBLE_EQ(d.total(), 1.0);
    EXPECT_EQ(d.at(5), 0.0);
    const DistributionOverLine f = DistributionOverLine::from_map({{3, 0.5}, {-2, 0.5}});
    EXPECT_EQ(f.first_position(), -2);
    EXPECT_DOUBLE_EQ(moments(f).stddev, 2.5);
}

TEST(StddevSeries, AgreesWithDirectEvolution) {
    const CoinMap coins = periodic_coin(3);
    const auto series = stddev_series(symmetric_initial_state(), coins, 60);
    ASSERT_EQ(series.size(), 60u);
    for (std::int64_t t : {1, 7, 30, 60}) {
        const Moments m = moments(distribution(evolve(symmetric_initial_state(), coins, t)));
        EXPECT_EQ(series[static_cast<std::size_t>(t - 1)].t, t);
        EXPECT_NEAR(series[static_cast<std::size_t>(t - 1)].stddev, m.stddev, 1e-12);
    }
    EXPECT_THROW(stddev_series(symmetric_initial_state(), coins, 0), std::invalid_argument);
}

TEST(StddevSeries, IdentityCoinIsBallistic) {
    // |L> runs left, |R> runs right: stddev is exactly t.
    const auto series = stddev_series(symmetric_initial_state(), CoinMap::homogeneous(Coin::identity()), 50);
    for (const auto &s : series) EXPECT_NEAR(s.stddev, static_cast<double>(s.t), 1e-12);
}

}  // namespace
}  // namespace qwalk
