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

#ifndef QWALK_LINE_WALK_H
#define QWALK_LINE_WALK_H

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "qwalk/core.h"

namespace qwalk {

/// Coins C_n for n mod 2*delta.
class PeriodicCoinSpec {
   public:
    /// Throws std::invalid_argument unless coins.size() == 2 * delta, delta >= 1.
    PeriodicCoinSpec(int delta, std::vector<Coin> coins);

    int delta() const { return delta_; }
    int period() const { return 2 * delta_; }
    const std::vector<Coin> &coins() const { return coins_; }
    const Coin &at(std::int64_t n) const;

    /// The same walk seen from site 1: C'_n = C_{n+1}.
    PeriodicCoinSpec shifted(std::int64_t by) const;

   private:
    int delta_;
    std::vector<Coin> coins_;
};

/// Position -> coin rule. Either a periodic table or an arbitrary rule; rule
/// results are checked for unitarity on every lookup.
class CoinMap {
   public:
    using Rule = std::function<Coin(std::int64_t)>;

    static CoinMap homogeneous(const Coin &coin);
    static CoinMap periodic(const PeriodicCoinSpec &spec);
    /// `period`, when given, is a promise that rule(n + period) == rule(n).
    static CoinMap from_rule(Rule rule, std::optional<std::int64_t> period = std::nullopt);

    Coin at(std::int64_t n) const;
    std::optional<std::int64_t> period() const { return period_; }

   private:
    std::shared_ptr<const std::vector<Coin>> table_;
    Rule rule_;
    std::optional<std::int64_t> period_;
};

/// (cos(n pi/k), -sin(n pi/k); sin(n pi/k), cos(n pi/k)). Quarter turns are
/// exact, so the reflecting coins at n pi/k = pi/2 have exactly zero diagonal.
Coin rotation_coin(std::int64_t n, int k);

/// The rotation family as a period-2k spec (delta = k). Throws for k < 1.
PeriodicCoinSpec periodic_spec(int k);
CoinMap periodic_coin(int k);

/// (|n0,L> + |n0,R>)/sqrt2.
LineWalkState symmetric_initial_state(std::int64_t n0 = 0);

/// One application of W = S (sum_m |m><m| (x) C_m), S moving L left and R right.
LineWalkState step(const LineWalkState &state, const CoinMap &coins);

LineWalkState evolve(LineWalkState initial, const CoinMap &coins, std::int64_t steps);

/// Per-site probabilities over a contiguous window.
class DistributionOverLine {
   public:
    DistributionOverLine() = default;
    DistributionOverLine(std::int64_t first, std::vector<double> probabilities)
        : first_(first), p_(std::move(probabilities)) {}
    static DistributionOverLine from_map(const std::map<std::int64_t, double> &entries);

    std::int64_t first_position() const { return first_; }
    const std::vector<double> &probabilities() const { return p_; }
    double at(std::int64_t n) const;
    double total() const;

   private:
    std::int64_t first_ = 0;
    std::vector<double> p_;
};

DistributionOverLine distribution(const LineWalkState &state);

struct Moments {
    double mean = 0.0;
    double second_moment = 0.0;
    double variance = 0.0;
    double stddev = 0.0;
};

/// Variance is accumulated about the mean, which equals E(N^2) - E(N)^2
/// without the cancellation.
Moments moments(const DistributionOverLine &dist);

struct StddevSample {
    std::int64_t t;
    double mean;
    double stddev;
};

/// Stddev after each of t = 1..t_max steps, stepping incrementally.
std::vector<StddevSample> stddev_series(const LineWalkState &initial, const CoinMap &coins, std::int64_t t_max);

}  // namespace qwalk

#endif  // QWALK_LINE_WALK_H
