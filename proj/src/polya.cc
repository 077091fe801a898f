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

#include "qwalk/polya.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "qwalk/parallel.h"

namespace qwalk {

bool urn_coin_guarded(std::int64_t r, std::int64_t b) { return r < 0 || b < 0 || r + b < 1; }

Coin urn_coin(std::int64_t r, std::int64_t b) {
    if (urn_coin_guarded(r, b)) return Coin::identity();
    const double s = static_cast<double>(r + b);
    const double cr = std::sqrt(static_cast<double>(r) / s);
    const double cb = std::sqrt(static_cast<double>(b) / s);
    Matrix2c m;
    m << cr, cb, cb, -cr;
    return Coin::from_matrix(m);
}

UrnWalkState UrnWalkState::start(std::int64_t r0, std::int64_t b0, Complex a, Complex b) {
    if (std::abs(abs2(a) + abs2(b) - 1.0) > kStateTolerance) {
        throw NormViolation("UrnWalkState: |a|^2 + |b|^2 must equal 1");
    }
    UrnWalkState s;
    s.total_ = r0 + b0;
    s.first_red_ = r0;
    s.amps_ = {Vector2c(a, b)};
    return s;
}

Vector2c UrnWalkState::at_red(std::int64_t r) const {
    if (r < first_red_ || r > last_red()) return Vector2c::Zero();
    return amps_[static_cast<std::size_t>(r - first_red_)];
}

double UrnWalkState::norm_squared() const {
    double s = 0.0;
    for (const auto &v : amps_) s += v.squaredNorm();
    return s;
}

std::vector<double> UrnWalkState::red_distribution() const {
    std::vector<double> p;
    p.reserve(amps_.size());
    for (const auto &v : amps_) p.push_back(v.squaredNorm());
    return p;
}

UrnWalkState urn_step(const UrnWalkState &state) {
    UrnWalkState out;
    out.total_ = state.total_ + 1;
    out.first_red_ = state.first_red_;
    out.time_ = state.time_ + 1;
    out.guard_hits_ = state.guard_hits_;
    out.amps_.assign(state.amps_.size() + 1, Vector2c::Zero());

    bool guard_met = false;
    for (std::size_t i = 0; i < state.amps_.size(); ++i) {
        const std::int64_t r = state.first_red_ + static_cast<std::int64_t>(i);
        const std::int64_t b = state.total_ - r;
        const Vector2c &v = state.amps_[i];
        Complex red, black;
        if (urn_coin_guarded(r, b)) {
            if (v(0) != Complex(0.0) || v(1) != Complex(0.0)) guard_met = true;
            red = v(0);
            black = v(1);
        } else {
            const double s = static_cast<double>(r + b);
            const double cr = std::sqrt(static_cast<double>(r) / s);
            const double cb = std::sqrt(static_cast<double>(b) / s);
            red = cr * v(0) + cb * v(1);
            black = cb * v(0) - cr * v(1);
        }
        out.amps_[i + 1](0) += red;  // r + 1
        out.amps_[i](1) += black;    // b + 1
    }
    if (guard_met) ++out.guard_hits_;
    return out;
}

UrnTransition measure_reset_equivalence(std::int64_t r, std::int64_t b) {
    if (r < 0 || b < 0 || r + b < 1) throw std::invalid_argument("measure_reset_equivalence: need r, b >= 0, r+b >= 1");
    const UrnWalkState next = urn_step(UrnWalkState::start(r, b));
    return {next.at_red(r + 1).squaredNorm(), next.at_red(r).squaredNorm()};
}

ClassicalUrn::ClassicalUrn(std::int64_t r, std::int64_t b, std::uint64_t seed, std::uint64_t stream) : r_(r), b_(b) {
    // seed_seq and mt19937_64 are fully specified by the standard, so streams
    // reproduce across toolchains.
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    rng_.seed(seq);
}

bool ClassicalUrn::step() {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    const bool red = u * static_cast<double>(r_ + b_) < static_cast<double>(r_);
    if (red) {
        ++r_;
    } else {
        ++b_;
    }
    return red;
}

ClassicalUrnResult classical_urn_run(std::int64_t r0, std::int64_t b0, std::int64_t steps, std::int64_t samples,
                                     std::uint64_t seed) {
    if (r0 < 1 || b0 < 1) throw std::invalid_argument("classical_urn_run: r0 and b0 must be >= 1");
    if (samples < 1) throw std::invalid_argument("classical_urn_run: samples must be >= 1");
    if (steps < 0) throw std::invalid_argument("classical_urn_run: steps must be >= 0");

    ClassicalUrnResult result;
    result.fractions.assign(static_cast<std::size_t>(samples), 0.0);
    parallel_for(static_cast<std::size_t>(samples), [&](std::size_t i) {
        ClassicalUrn urn(r0, b0, seed, static_cast<std::uint64_t>(i));
        for (std::int64_t s = 0; s < steps; ++s) urn.step();
        result.fractions[i] = static_cast<double>(urn.red()) / static_cast<double>(urn.red() + urn.black());
    });

    double sum = 0.0;
    for (double x : result.fractions) sum += x;
    result.mean = sum / static_cast<double>(samples);
    double ss = 0.0;
    for (double x : result.fractions) ss += (x - result.mean) * (x - result.mean);
    result.variance = samples > 1 ? ss / static_cast<double>(samples - 1) : 0.0;
    return result;
}

double beta_variance(double a, double b) { return a * b / ((a + b) * (a + b) * (a + b + 1.0)); }

std::vector<UrnStddevSample> urn_stddev_series(std::int64_t r0, std::int64_t b0, std::int64_t t_max, Complex a,
                                               Complex b) {
    if (t_max < 1) throw std::invalid_argument("urn_stddev_series: t_max must be >= 1");
    std::vector<UrnStddevSample> out;
    out.reserve(static_cast<std::size_t>(t_max) + 1);
    UrnWalkState state = UrnWalkState::start(r0, b0, a, b);
    out.push_back({0, 0.0, 0.0});
    for (std::int64_t t = 1; t <= t_max; ++t) {
        state = urn_step(state);
        const auto p = state.red_distribution();
        double mass = 0.0, mean = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            mass += p[i];
            mean += p[i] * static_cast<double>(state.first_red() + static_cast<std::int64_t>(i));
        }
        mean /= mass;
        double var = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double d = static_cast<double>(state.first_red() + static_cast<std::int64_t>(i)) - mean;
            var += p[i] * d * d;
        }
        const double sd = std::sqrt(var / mass);
        out.push_back({t, sd, sd / static_cast<double>(t)});
    }
    return out;
}

}  // namespace qwalk
