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

#include "qwalk/line_walk.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace qwalk {

namespace {

std::int64_t floor_mod(std::int64_t n, std::int64_t m) {
    const std::int64_t r = n % m;
    return r < 0 ? r + m : r;
}

}  // namespace

PeriodicCoinSpec::PeriodicCoinSpec(int delta, std::vector<Coin> coins) : delta_(delta), coins_(std::move(coins)) {
    if (delta_ < 1) throw std::invalid_argument("PeriodicCoinSpec: delta must be >= 1");
    if (coins_.size() != static_cast<std::size_t>(2 * delta_)) {
        throw std::invalid_argument("PeriodicCoinSpec: need exactly 2*delta coins");
    }
}

const Coin &PeriodicCoinSpec::at(std::int64_t n) const {
    return coins_[static_cast<std::size_t>(floor_mod(n, period()))];
}

PeriodicCoinSpec PeriodicCoinSpec::shifted(std::int64_t by) const {
    std::vector<Coin> rotated;
    rotated.reserve(coins_.size());
    for (int n = 0; n < period(); ++n) rotated.push_back(at(n + by));
    return PeriodicCoinSpec(delta_, std::move(rotated));
}

CoinMap CoinMap::homogeneous(const Coin &coin) {
    CoinMap map;
    map.table_ = std::make_shared<const std::vector<Coin>>(1, coin);
    map.period_ = 1;
    return map;
}

CoinMap CoinMap::periodic(const PeriodicCoinSpec &spec) {
    CoinMap map;
    map.table_ = std::make_shared<const std::vector<Coin>>(spec.coins());
    map.period_ = spec.period();
    return map;
}

CoinMap CoinMap::from_rule(Rule rule, std::optional<std::int64_t> period) {
    if (period && *period < 1) throw std::invalid_argument("CoinMap: period must be >= 1");
    CoinMap map;
    map.rule_ = std::move(rule);
    map.period_ = period;
    return map;
}

Coin CoinMap::at(std::int64_t n) const {
    if (table_) return (*table_)[static_cast<std::size_t>(floor_mod(n, *period_))];
    Coin c = rule_(n);
    if (!is_unitary(MatrixXc(c.matrix()), kCoinTolerance)) throw NotUnitary("coin rule returned a non-unitary coin");
    return c;
}

Coin rotation_coin(std::int64_t n, int k) {
    if (k < 1) throw std::invalid_argument("rotation_coin: k must be >= 1");
    // angle = pi * m / k with m in [0, 2k)
    const std::int64_t m = floor_mod(n, 2 * static_cast<std::int64_t>(k));
    double c = 0.0;
    double s = 0.0;
    if ((2 * m) % k == 0) {
        switch ((2 * m) / k) {
            case 0: c = 1.0; s = 0.0; break;
            case 1: c = 0.0; s = 1.0; break;
            case 2: c = -1.0; s = 0.0; break;
            default: c = 0.0; s = -1.0; break;
        }
    } else {
        const double angle = std::numbers::pi * static_cast<double>(m) / static_cast<double>(k);
        c = std::cos(angle);
        s = std::sin(angle);
    }
    Matrix2c mat;
    mat << c, -s, s, c;
    return Coin::from_matrix(mat);
}

PeriodicCoinSpec periodic_spec(int k) {
    if (k < 1) throw std::invalid_argument("periodic_spec: k must be >= 1");
    std::vector<Coin> coins;
    coins.reserve(static_cast<std::size_t>(2 * k));
    for (int n = 0; n < 2 * k; ++n) coins.push_back(rotation_coin(n, k));
    return PeriodicCoinSpec(k, std::move(coins));
}

CoinMap periodic_coin(int k) { return CoinMap::periodic(periodic_spec(k)); }

LineWalkState symmetric_initial_state(std::int64_t n0) {
    const double h = 1.0 / std::sqrt(2.0);
    return LineWalkState::localized(n0, h, h);
}

LineWalkState step(const LineWalkState &state, const CoinMap &coins) {
    if (state.empty()) return LineWalkState(state.first_position(), {}, state.time() + 1);
    const auto in = state.amplitudes();
    std::vector<Vector2c> out(in.size() + 2, Vector2c::Zero());
    const std::int64_t first = state.first_position();
    // out index i corresponds to position first - 1 + i
    for (std::size_t i = 0; i < in.size(); ++i) {
        const Vector2c c = coins.at(first + static_cast<std::int64_t>(i)).apply(in[i]);
        out[i](0) += c(0);      // L moves to n - 1
        out[i + 2](1) += c(1);  // R moves to n + 1
    }
    return LineWalkState(first - 1, std::move(out), state.time() + 1);
}

LineWalkState evolve(LineWalkState initial, const CoinMap &coins, std::int64_t steps) {
    if (steps < 0) throw std::invalid_argument("evolve: steps must be nonnegative");
    for (std::int64_t t = 0; t < steps; ++t) initial = step(initial, coins);
    return initial;
}

DistributionOverLine DistributionOverLine::from_map(const std::map<std::int64_t, double> &entries) {
    if (entries.empty()) return {};
    const std::int64_t first = entries.begin()->first;
    const std::int64_t last = entries.rbegin()->first;
    std::vector<double> p(static_cast<std::size_t>(last - first + 1), 0.0);
    for (const auto &[n, prob] : entries) p[static_cast<std::size_t>(n - first)] = prob;
    return DistributionOverLine(first, std::move(p));
}

double DistributionOverLine::at(std::int64_t n) const {
    const std::int64_t i = n - first_;
    if (i < 0 || i >= static_cast<std::int64_t>(p_.size())) return 0.0;
    return p_[static_cast<std::size_t>(i)];
}

double DistributionOverLine::total() const {
    double s = 0.0;
    for (double v : p_) s += v;
    return s;
}

DistributionOverLine distribution(const LineWalkState &state) {
    const auto amps = state.amplitudes();
    std::vector<double> p(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) p[i] = abs2(amps[i](0)) + abs2(amps[i](1));
    return DistributionOverLine(state.first_position(), std::move(p));
}

Moments moments(const DistributionOverLine &dist) {
    const auto &p = dist.probabilities();
    const auto first = dist.first_position();
    Moments m;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double x = static_cast<double>(first + static_cast<std::int64_t>(i));
        m.mean += p[i] * x;
        m.second_moment += p[i] * x * x;
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = static_cast<double>(first + static_cast<std::int64_t>(i)) - m.mean;
        m.variance += p[i] * d * d;
    }
    m.stddev = std::sqrt(m.variance);
    return m;
}

std::vector<StddevSample> stddev_series(const LineWalkState &initial, const CoinMap &coins, std::int64_t t_max) {
    if (t_max < 1) throw std::invalid_argument("stddev_series: t_max must be >= 1");
    std::vector<StddevSample> out;
    out.reserve(static_cast<std::size_t>(t_max));
    LineWalkState state = initial;
    for (std::int64_t t = 1; t <= t_max; ++t) {
        state = step(state, coins);
        const Moments m = moments(distribution(state));
        out.push_back({t, m.mean, m.stddev});
    }
    return out;
}

}  // namespace qwalk
