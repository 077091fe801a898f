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

#ifndef QWALK_BOUNDEDNESS_H
#define QWALK_BOUNDEDNESS_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "qwalk/core.h"
#include "qwalk/line_walk.h"

namespace qwalk {

/// A coin of the form (0, e^{i theta}; e^{i phi}, 0): both diagonal entries
/// have magnitude <= tol.
bool is_reflecting(const Coin &coin, double tol = 1e-12);

struct BoundednessVerdict {
    enum class Kind { Bounded, Unbounded, Inconclusive };

    Kind kind = Kind::Inconclusive;
    std::int64_t lower = 0;          // Bounded only
    std::int64_t upper = 0;          // Bounded only
    std::int64_t search_radius = 0;  // Inconclusive only

    static BoundednessVerdict bounded(std::int64_t lower, std::int64_t upper) {
        return {Kind::Bounded, lower, upper, 0};
    }
    static BoundednessVerdict unbounded() { return {Kind::Unbounded, 0, 0, 0}; }
    static BoundednessVerdict inconclusive(std::int64_t radius) { return {Kind::Inconclusive, 0, 0, radius}; }

    bool operator==(const BoundednessVerdict &) const = default;
};

std::string to_string(BoundednessVerdict::Kind kind);

/// A walk started at n0 is confined iff reflecting coins sit on both sides of
/// n0. Reports the nearest one on each side within `search_radius`. A side
/// with no reflecting coin in one full declared period can never have one,
/// which makes the walk Unbounded; without a period the answer is Inconclusive.
BoundednessVerdict classify(const CoinMap &coins, std::int64_t n0, std::int64_t search_radius);

/// Amplitude was found outside the claimed bounds.
class VerdictMismatch : public std::runtime_error {
   public:
    VerdictMismatch(std::int64_t time, std::int64_t position);
    std::int64_t time() const { return time_; }
    std::int64_t position() const { return position_; }

   private:
    std::int64_t time_;
    std::int64_t position_;
};

/// Evolves for t_max steps and checks that every amplitude outside
/// [verdict.lower, verdict.upper] is exactly zero at every step. Returns true
/// or throws VerdictMismatch carrying the first escaping (t, n). Throws
/// std::invalid_argument if the verdict is not Bounded.
bool verify_support(const LineWalkState &initial, const CoinMap &coins, std::int64_t t_max,
                    const BoundednessVerdict &verdict);

/// First time at which more than `mass_threshold` probability lies outside
/// [lower, upper], if that happens within t_max steps.
std::optional<std::int64_t> escape_time(const LineWalkState &initial, const CoinMap &coins, std::int64_t lower,
                                        std::int64_t upper, std::int64_t t_max, double mass_threshold);

}  // namespace qwalk

#endif  // QWALK_BOUNDEDNESS_H
