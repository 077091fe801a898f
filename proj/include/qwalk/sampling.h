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

// Seeded random instances for cross-checks: coins, periodic specs, DR
// parameters, and states on the coin-embedded pairs.

#ifndef QWALK_SAMPLING_H
#define QWALK_SAMPLING_H

#include <cstdint>
#include <random>

#include "qwalk/dr_walk.h"
#include "qwalk/line_walk.h"

namespace qwalk {

using Rng = std::mt19937_64;

/// Standard complex Gaussian.
Complex random_complex(Rng &rng);

/// A random unit vector in C^2, returned as (first, second).
std::pair<Complex, Complex> random_unit_pair(Rng &rng);

/// Haar-like 2x2 unitary (Gram-Schmidt of Gaussian columns).
Coin random_coin(Rng &rng);

PeriodicCoinSpec random_periodic_spec(Rng &rng, int delta);

/// Independent random (d, e) and (f, g) on each site of [-window, window],
/// repeated periodically outside it.
DRSpec random_dr_spec(Rng &rng, std::int64_t window);

/// Each member has random complex entries at offsets -width..width, with
/// independent draws on [-window, window], repeated periodically outside.
SequenceFamily random_sequence_family(Rng &rng, int width, std::int64_t window);

/// Random normalized state on the pairs (n, n-1), (n, n+1), |n| <= radius.
TwoCopyState random_embedded_state(Rng &rng, std::int64_t radius);

}  // namespace qwalk

#endif  // QWALK_SAMPLING_H
