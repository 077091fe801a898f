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

// Quantum Polya urn with a position-dependent coin, and the classical urn.
//
// Positions are ball counts (r, b); the chirality register {R, B} picks which
// count the shift increments. After t steps every configuration in the
// support has r + b = r0 + b0 + t, so the state is a dense vector over r.

#ifndef QWALK_POLYA_H
#define QWALK_POLYA_H

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qwalk/core.h"

namespace qwalk {

/// In basis (R, B): (sqrt(r/s), sqrt(b/s); sqrt(b/s), -sqrt(r/s)) with s = r + b
/// when r >= 0, b >= 0 and s >= 1, the identity otherwise.
Coin urn_coin(std::int64_t r, std::int64_t b);

/// True when urn_coin(r, b) takes the identity branch.
bool urn_coin_guarded(std::int64_t r, std::int64_t b);

class UrnWalkState {
   public:
    /// |r0, b0> (a|R> + b|B>). Throws NormViolation if |a|^2 + |b|^2 != 1.
    static UrnWalkState start(std::int64_t r0, std::int64_t b0, Complex a = 1.0, Complex b = 0.0);

    /// r + b on every support point.
    std::int64_t total() const { return total_; }
    std::int64_t time() const { return time_; }
    std::int64_t first_red() const { return first_red_; }
    std::int64_t last_red() const { return first_red_ + static_cast<std::int64_t>(amps_.size()) - 1; }

    /// (psi_R, psi_B) at red count r; zero outside the window.
    Vector2c at_red(std::int64_t r) const;
    std::span<const Vector2c> amplitudes() const { return amps_; }

    double norm_squared() const;
    /// P(r) over [first_red, last_red].
    std::vector<double> red_distribution() const;
    /// Number of steps in which nonzero amplitude met the identity branch.
    std::int64_t guard_hits() const { return guard_hits_; }

   private:
    friend UrnWalkState urn_step(const UrnWalkState &state);

    std::int64_t total_ = 0;
    std::int64_t first_red_ = 0;
    std::vector<Vector2c> amps_;
    std::int64_t time_ = 0;
    std::int64_t guard_hits_ = 0;
};

/// Coin, then S: |r,b,R> -> |r+1,b,R>, |r,b,B> -> |r,b+1,B>.
UrnWalkState urn_step(const UrnWalkState &state);

struct UrnTransition {
    double p_red = 0.0;    // P(r+1, b)
    double p_black = 0.0;  // P(r, b+1)
};

/// One step from |r,b,R> followed by a position measurement. Throws
/// std::invalid_argument unless r, b >= 0 and r + b >= 1.
UrnTransition measure_reset_equivalence(std::int64_t r, std::int64_t b);

/// A single classical urn: draw a ball uniformly, return it with a copy.
class ClassicalUrn {
   public:
    ClassicalUrn(std::int64_t r, std::int64_t b, std::uint64_t seed, std::uint64_t stream);

    std::int64_t red() const { return r_; }
    std::int64_t black() const { return b_; }
    /// Returns true when a red ball was drawn.
    bool step();

   private:
    std::int64_t r_;
    std::int64_t b_;
    std::mt19937_64 rng_;
};

struct ClassicalUrnResult {
    std::vector<double> fractions;  // final X = r/(r+b) per sample, in sample order
    double mean = 0.0;
    double variance = 0.0;  // unbiased sample variance
};

/// Sample i uses the stream (seed, i), so the aggregate does not depend on the
/// thread count. Throws std::invalid_argument unless r0, b0 >= 1, samples >= 1.
ClassicalUrnResult classical_urn_run(std::int64_t r0, std::int64_t b0, std::int64_t steps, std::int64_t samples,
                                     std::uint64_t seed);

/// Variance of Beta(a, b).
double beta_variance(double a, double b);

struct UrnStddevSample {
    std::int64_t t;
    double stddev;        // of r
    double stddev_per_t;  // 0 at t = 0
};

/// Exact evolution from |r0, b0> (a|R> + b|B>) for t = 0..t_max.
std::vector<UrnStddevSample> urn_stddev_series(std::int64_t r0, std::int64_t b0, std::int64_t t_max, Complex a = 1.0,
                                               Complex b = 0.0);

}  // namespace qwalk

#endif  // QWALK_POLYA_H
