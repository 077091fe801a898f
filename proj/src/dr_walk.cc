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

#include "qwalk/dr_walk.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace qwalk {

namespace {

constexpr double kSpecTolerance = 1e-12;

void check_normalized(const OffsetAmplitudes &seq) {
    double s = 0.0;
    for (const auto &[j, z] : seq) s += abs2(z);
    if (std::abs(s - 1.0) > kSpecTolerance) throw NormViolation("reflection vector is not normalized");
}

Complex lookup(const TwoCopyState::Map &amps, std::int64_t n, std::int64_t m) {
    const auto it = amps.find({n, m});
    return it == amps.end() ? Complex(0.0) : it->second;
}

TwoCopyState negated(const TwoCopyState &state) {
    TwoCopyState::Map out;
    for (const auto &[key, z] : state.amplitudes()) out.emplace(key, -z);
    return TwoCopyState(std::move(out));
}

}  // namespace

Complex TwoCopyState::at(std::int64_t n, std::int64_t m) const { return lookup(amps_, n, m); }

void TwoCopyState::compact() {
    std::erase_if(amps_, [](const auto &kv) { return kv.second == Complex(0.0); });
}

double TwoCopyState::norm_squared() const {
    double s = 0.0;
    for (const auto &[key, z] : amps_) s += abs2(z);
    return s;
}

double TwoCopyState::max_difference(const TwoCopyState &other) const {
    double worst = 0.0;
    for (const auto &[key, z] : amps_) worst = std::max(worst, std::abs(z - other.at(key.first, key.second)));
    for (const auto &[key, z] : other.amps_) worst = std::max(worst, std::abs(z - at(key.first, key.second)));
    return worst;
}

TwoCopyState reflect_first_block(const SequenceFamily &p, const TwoCopyState &state) {
    std::set<std::int64_t> firsts;
    for (const auto &[key, z] : state.amplitudes()) firsts.insert(key.first);

    TwoCopyState out = negated(state);
    for (const std::int64_t n : firsts) {
        const OffsetAmplitudes pn = p(n);
        check_normalized(pn);
        Complex overlap = 0.0;
        for (const auto &[j, d] : pn) overlap += std::conj(d) * state.at(n, n + j);
        if (overlap == Complex(0.0)) continue;
        for (const auto &[j, d] : pn) out.add(n, n + j, 2.0 * overlap * d);
    }
    out.compact();
    return out;
}

TwoCopyState reflect_second_block(const SequenceFamily &q, const TwoCopyState &state) {
    std::set<std::int64_t> seconds;
    for (const auto &[key, z] : state.amplitudes()) seconds.insert(key.second);

    TwoCopyState out = negated(state);
    for (const std::int64_t m : seconds) {
        const OffsetAmplitudes qm = q(m);
        check_normalized(qm);
        Complex overlap = 0.0;
        for (const auto &[j, e] : qm) overlap += std::conj(e) * state.at(m + j, m);
        if (overlap == Complex(0.0)) continue;
        for (const auto &[j, e] : qm) out.add(m + j, m, 2.0 * overlap * e);
    }
    out.compact();
    return out;
}

TwoCopyState generalized_dr_step(const SequenceFamily &p, const SequenceFamily &q, const TwoCopyState &state) {
    return reflect_second_block(q, reflect_first_block(p, state));
}

DRSpec::DRSpec(Field d, Field e, Field f, Field g)
    : d_(std::move(d)), e_(std::move(e)), f_(std::move(f)), g_(std::move(g)) {}

DRSpec DRSpec::constant(Complex d, Complex e, Complex f, Complex g) {
    return DRSpec([d](std::int64_t) { return d; }, [e](std::int64_t) { return e; },
                  [f](std::int64_t) { return f; }, [g](std::int64_t) { return g; });
}

std::array<Complex, 4> DRSpec::at(std::int64_t n) const {
    const std::array<Complex, 4> v{d_(n), e_(n), f_(n), g_(n)};
    if (std::abs(abs2(v[0]) + abs2(v[1]) - 1.0) > kSpecTolerance ||
        std::abs(abs2(v[2]) + abs2(v[3]) - 1.0) > kSpecTolerance) {
        throw NormViolation("DRSpec: |d|^2+|e|^2 and |f|^2+|g|^2 must equal 1");
    }
    return v;
}

SequenceFamily DRSpec::p_family() const {
    return [spec = *this](std::int64_t n) {
        const auto v = spec.at(n);
        return OffsetAmplitudes{{+1, v[0]}, {-1, v[1]}};
    };
}

SequenceFamily DRSpec::q_family() const {
    return [spec = *this](std::int64_t m) {
        const auto v = spec.at(m);
        return OffsetAmplitudes{{+1, v[2]}, {-1, v[3]}};
    };
}

TwoCopyState dr_step(const DRSpec &spec, const TwoCopyState &state) {
    return generalized_dr_step(spec.p_family(), spec.q_family(), state);
}

DRSpec hadamard_dr_spec() {
    const double d = 0.5 * std::sqrt(2.0 + std::sqrt(2.0));
    const double e = 0.5 * std::sqrt(2.0 - std::sqrt(2.0));
    return DRSpec::constant(d, e, d, e);
}

DRSpec periodic_dr_spec(int k) {
    if (k < 1) throw std::invalid_argument("periodic_dr_spec: k must be >= 1");
    // sin(n pi/k) from the exact rotation table.
    auto large = [k](std::int64_t n) { return Complex(std::sqrt((1.0 + rotation_coin(n, k)(1, 0).real()) / 2.0)); };
    auto small = [k](std::int64_t n) { return Complex(std::sqrt((1.0 - rotation_coin(n, k)(1, 0).real()) / 2.0)); };
    return DRSpec(large, small, large, small);
}

namespace {

using SiteMap = std::map<std::int64_t, Vector2c>;

SiteMap decode(const TwoCopyState &state, ShiftKind shift) {
    SiteMap sites;
    for (const auto &[key, z] : state.amplitudes()) {
        const auto [n, m] = key;
        int chirality = 0;
        if (m == n + 1) {
            chirality = shift == ShiftKind::Standard ? 0 : 1;
        } else if (m == n - 1) {
            chirality = shift == ShiftKind::Standard ? 1 : 0;
        } else {
            if (z == Complex(0.0)) continue;
            throw UnsupportedSupport("pdc_two_step: amplitude off the coin-embedded pairs m = n +/- 1");
        }
        auto [it, inserted] = sites.try_emplace(n, Vector2c::Zero());
        it->second(chirality) += z;
    }
    return sites;
}

TwoCopyState encode(const SiteMap &sites, ShiftKind shift) {
    TwoCopyState out;
    for (const auto &[n, v] : sites) {
        const std::int64_t left_partner = shift == ShiftKind::Standard ? n + 1 : n - 1;
        const std::int64_t right_partner = shift == ShiftKind::Standard ? n - 1 : n + 1;
        out.add(n, left_partner, v(0));
        out.add(n, right_partner, v(1));
    }
    out.compact();
    return out;
}

SiteMap coin_then_shift(const SiteMap &sites, const CoinMap &coins, ShiftKind shift) {
    SiteMap out;
    auto deposit = [&out](std::int64_t n, int chirality, Complex z) {
        auto [it, inserted] = out.try_emplace(n, Vector2c::Zero());
        it->second(chirality) += z;
    };
    for (const auto &[n, v] : sites) {
        const Vector2c c = coins.at(n).apply(v);
        if (shift == ShiftKind::Standard) {
            deposit(n - 1, 0, c(0));
            deposit(n + 1, 1, c(1));
        } else {
            deposit(n - 1, 1, c(0));
            deposit(n + 1, 0, c(1));
        }
    }
    return out;
}

}  // namespace

TwoCopyState pdc_two_step(const PDCTwoStepSpec &spec, const TwoCopyState &state, ShiftKind shift) {
    const SiteMap start = decode(state, shift);
    const SiteMap half = coin_then_shift(start, spec.first, shift);
    return encode(coin_then_shift(half, spec.second, shift), shift);
}

namespace {

Coin standard_embedding_coin(Complex large, Complex small) {
    return make_coin(2.0 * std::conj(large) * small, -(2.0 * abs2(small) - 1.0), 0.0);
}

// 2|p><p| - I in the basis (|n,n-1>, |n,n+1>) with p = (small, large).
Coin flip_embedding_coin(Complex large, Complex small) {
    Matrix2c m;
    m << 2.0 * abs2(small) - 1.0, 2.0 * small * std::conj(large), 2.0 * large * std::conj(small),
        2.0 * abs2(large) - 1.0;
    return Coin::from_matrix(m);
}

}  // namespace

PDCTwoStepSpec pdc_from_dr(const DRSpec &spec, ShiftKind shift) {
    auto build = shift == ShiftKind::Standard ? standard_embedding_coin : flip_embedding_coin;
    auto first = [spec, build](std::int64_t n) {
        const auto v = spec.at(n);
        return build(v[0], v[1]);
    };
    auto second = [spec, build](std::int64_t n) {
        const auto v = spec.at(n);
        return build(v[2], v[3]);
    };
    return {CoinMap::from_rule(first), CoinMap::from_rule(second)};
}

PDCTwoStepSpec separating_pdc_spec() {
    const double h = 1.0 / std::sqrt(2.0);
    const Coin c = make_coin(h, h, std::numbers::pi / 2.0);
    return {CoinMap::homogeneous(c), CoinMap::homogeneous(c)};
}

Complex realness_witness(const DRSpec &spec, std::int64_t n) {
    return dr_step(spec, TwoCopyState::basis(n, n + 1)).at(n, n + 1);
}

Complex realness_witness(const PDCTwoStepSpec &spec, std::int64_t n, ShiftKind shift) {
    return pdc_two_step(spec, TwoCopyState::basis(n, n + 1), shift).at(n, n + 1);
}

Complex generalized_dr_witness(const SequenceFamily &p, const SequenceFamily &q, std::int64_t n) {
    return generalized_dr_step(p, q, TwoCopyState::basis(n, n + 1)).at(n, n + 1);
}

double generalized_witness_closed_form(const SequenceFamily &p, const SequenceFamily &q, std::int64_t n) {
    auto component = [](const OffsetAmplitudes &seq, std::int64_t offset) {
        Complex z = 0.0;
        for (const auto &[j, a] : seq) {
            if (j == offset) z += a;
        }
        return z;
    };
    const Complex q_at_n = component(q(n + 1), -1);      // <n|Q_{n+1}>
    const Complex p_at_next = component(p(n), +1);       // <n+1|P_n>
    return (2.0 * abs2(q_at_n) - 1.0) * (2.0 * abs2(p_at_next) - 1.0);
}

UrnPairState polya_dr_step(const PolyaDRParams &params, const UrnPairState &state) {
    auto value = [](const UrnPairState &s, const UrnPairKey &k) {
        const auto it = s.find(k);
        return it == s.end() ? Complex(0.0) : it->second;
    };
    auto checked = [&params](std::int64_t r, std::int64_t b) {
        const auto v = params.at(r, b);
        if (std::abs(abs2(v[0]) + abs2(v[1]) - 1.0) > kSpecTolerance ||
            std::abs(abs2(v[2]) + abs2(v[3]) - 1.0) > kSpecTolerance) {
            throw NormViolation("polya_dr_step: |alpha|^2+|beta|^2 and |gamma|^2+|delta|^2 must equal 1");
        }
        return v;
    };
    auto compact = [](UrnPairState &s) { std::erase_if(s, [](const auto &kv) { return kv.second == Complex(0.0); }); };

    // 2 Pi_A - I: blocks keyed by the first pair, |p_{r,b}> in the second register.
    UrnPairState after_a;
    for (const auto &[k, z] : state) after_a.emplace(k, -z);
    std::set<std::pair<std::int64_t, std::int64_t>> firsts;
    for (const auto &[k, z] : state) firsts.insert({k[0], k[1]});
    for (const auto &[r, b] : firsts) {
        const auto v = checked(r, b);
        const UrnPairKey red{r, b, r + 1, b};
        const UrnPairKey black{r, b, r, b + 1};
        const Complex overlap = std::conj(v[0]) * value(state, red) + std::conj(v[1]) * value(state, black);
        if (overlap == Complex(0.0)) continue;
        after_a[red] += 2.0 * overlap * v[0];
        after_a[black] += 2.0 * overlap * v[1];
    }
    compact(after_a);

    // 2 Pi_B - I: blocks keyed by the second pair, |q_{r,b}> in the first register.
    UrnPairState out;
    for (const auto &[k, z] : after_a) out.emplace(k, -z);
    std::set<std::pair<std::int64_t, std::int64_t>> seconds;
    for (const auto &[k, z] : after_a) seconds.insert({k[2], k[3]});
    for (const auto &[r, b] : seconds) {
        const auto v = checked(r, b);
        const UrnPairKey red{r + 1, b, r, b};
        const UrnPairKey black{r, b + 1, r, b};
        const Complex overlap = std::conj(v[2]) * value(after_a, red) + std::conj(v[3]) * value(after_a, black);
        if (overlap == Complex(0.0)) continue;
        out[red] += 2.0 * overlap * v[2];
        out[black] += 2.0 * overlap * v[3];
    }
    compact(out);
    return out;
}

}  // namespace qwalk
