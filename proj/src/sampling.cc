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

#include "qwalk/sampling.h"

#include <cmath>
#include <memory>
#include <vector>

namespace qwalk {

namespace {

std::size_t wrap_index(std::int64_t n, std::int64_t window) {
    const std::int64_t period = 2 * window + 1;
    std::int64_t r = (n + window) % period;
    if (r < 0) r += period;
    return static_cast<std::size_t>(r);
}

}  // namespace

Complex random_complex(Rng &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    const double re = g(rng);
    const double im = g(rng);
    return {re, im};
}

std::pair<Complex, Complex> random_unit_pair(Rng &rng) {
    const Complex a = random_complex(rng);
    const Complex b = random_complex(rng);
    const double norm = std::sqrt(abs2(a) + abs2(b));
    return {a / norm, b / norm};
}

Coin random_coin(Rng &rng) {
    Vector2c u(random_complex(rng), random_complex(rng));
    u.normalize();
    Vector2c v(random_complex(rng), random_complex(rng));
    v -= u.dot(v) * u;
    v.normalize();
    Matrix2c m;
    m.col(0) = u;
    m.col(1) = v;
    return Coin::from_matrix(m);
}

PeriodicCoinSpec random_periodic_spec(Rng &rng, int delta) {
    std::vector<Coin> coins;
    for (int i = 0; i < 2 * delta; ++i) coins.push_back(random_coin(rng));
    return PeriodicCoinSpec(delta, std::move(coins));
}

DRSpec random_dr_spec(Rng &rng, std::int64_t window) {
    auto table = std::make_shared<std::vector<std::array<Complex, 4>>>();
    for (std::int64_t n = -window; n <= window; ++n) {
        const auto [d, e] = random_unit_pair(rng);
        const auto [f, g] = random_unit_pair(rng);
        table->push_back({d, e, f, g});
    }
    auto field = [table, window](int which) {
        return [table, window, which](std::int64_t n) { return (*table)[wrap_index(n, window)][which]; };
    };
    return DRSpec(field(0), field(1), field(2), field(3));
}

SequenceFamily random_sequence_family(Rng &rng, int width, std::int64_t window) {
    auto table = std::make_shared<std::vector<OffsetAmplitudes>>();
    for (std::int64_t n = -window; n <= window; ++n) {
        OffsetAmplitudes seq;
        double norm = 0.0;
        for (int j = -width; j <= width; ++j) {
            seq.emplace_back(j, random_complex(rng));
            norm += abs2(seq.back().second);
        }
        for (auto &entry : seq) entry.second /= std::sqrt(norm);
        table->push_back(std::move(seq));
    }
    return [table, window](std::int64_t n) { return (*table)[wrap_index(n, window)]; };
}

TwoCopyState random_embedded_state(Rng &rng, std::int64_t radius) {
    TwoCopyState::Map amps;
    double norm = 0.0;
    for (std::int64_t n = -radius; n <= radius; ++n) {
        for (const std::int64_t m : {n - 1, n + 1}) {
            const Complex z = random_complex(rng);
            amps[{n, m}] = z;
            norm += abs2(z);
        }
    }
    for (auto &[key, z] : amps) z /= std::sqrt(norm);
    return TwoCopyState(std::move(amps));
}

}  // namespace qwalk
