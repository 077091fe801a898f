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

#include "qwalk/boundedness.h"

#include <algorithm>
#include <cmath>

namespace qwalk {

bool is_reflecting(const Coin &coin, double tol) {
    return std::abs(coin(0, 0)) <= tol && std::abs(coin(1, 1)) <= tol;
}

std::string to_string(BoundednessVerdict::Kind kind) {
    switch (kind) {
        case BoundednessVerdict::Kind::Bounded: return "bounded";
        case BoundednessVerdict::Kind::Unbounded: return "unbounded";
        case BoundednessVerdict::Kind::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

namespace {

// Nearest reflecting coin at n0 + dir*d for d in [1, reach].
std::optional<std::int64_t> nearest_reflecting(const CoinMap &coins, std::int64_t n0, int dir, std::int64_t reach) {
    for (std::int64_t d = 1; d <= reach; ++d) {
        const std::int64_t n = n0 + dir * d;
        if (is_reflecting(coins.at(n))) return n;
    }
    return std::nullopt;
}

}  // namespace

BoundednessVerdict classify(const CoinMap &coins, std::int64_t n0, std::int64_t search_radius) {
    if (search_radius < 1) throw std::invalid_argument("classify: search_radius must be >= 1");

    const auto lower = nearest_reflecting(coins, n0, -1, search_radius);
    const auto upper = nearest_reflecting(coins, n0, +1, search_radius);
    if (lower && upper) return BoundednessVerdict::bounded(*lower, *upper);

    if (const auto period = coins.period()) {
        const bool left_open = !lower && !nearest_reflecting(coins, n0, -1, *period);
        const bool right_open = !upper && !nearest_reflecting(coins, n0, +1, *period);
        if (left_open || right_open) return BoundednessVerdict::unbounded();
    }
    return BoundednessVerdict::inconclusive(search_radius);
}

VerdictMismatch::VerdictMismatch(std::int64_t time, std::int64_t position)
    : std::runtime_error("amplitude escaped the claimed bounds at t=" + std::to_string(time) +
                         ", n=" + std::to_string(position)),
      time_(time),
      position_(position) {}

bool verify_support(const LineWalkState &initial, const CoinMap &coins, std::int64_t t_max,
                    const BoundednessVerdict &verdict) {
    if (verdict.kind != BoundednessVerdict::Kind::Bounded) {
        throw std::invalid_argument("verify_support: verdict must be Bounded");
    }
    auto check = [&](const LineWalkState &s) {
        const auto amps = s.amplitudes();
        for (std::size_t i = 0; i < amps.size(); ++i) {
            const std::int64_t n = s.first_position() + static_cast<std::int64_t>(i);
            if (n >= verdict.lower && n <= verdict.upper) continue;
            if (amps[i](0) != Complex(0.0) || amps[i](1) != Complex(0.0)) throw VerdictMismatch(s.time(), n);
        }
    };
    LineWalkState state = initial;
    check(state);
    for (std::int64_t t = 0; t < t_max; ++t) {
        state = step(state, coins);
        check(state);
    }
    return true;
}

std::optional<std::int64_t> escape_time(const LineWalkState &initial, const CoinMap &coins, std::int64_t lower,
                                        std::int64_t upper, std::int64_t t_max, double mass_threshold) {
    LineWalkState state = initial;
    for (std::int64_t t = 1; t <= t_max; ++t) {
        state = step(state, coins);
        const auto dist = distribution(state);
        double outside = 0.0;
        const auto &p = dist.probabilities();
        for (std::size_t i = 0; i < p.size(); ++i) {
            const std::int64_t n = dist.first_position() + static_cast<std::int64_t>(i);
            if (n < lower || n > upper) outside += p[i];
        }
        if (outside > mass_threshold) return t;
    }
    return std::nullopt;
}

}  // namespace qwalk
