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

// Double-reflection walks on two copies of the line, and the two-step
// position-dependent-coin walk written in the same space.
//
// The double-reflection operator is W = (2 Pi_B - I)(2 Pi_A - I) with
//   Pi_A = sum_n |n><n| (x) |P_n><P_n|,   Pi_B = sum_m |Q_m><Q_m| (x) |m><m|.
// Each projector is a direct sum of rank-one pieces, so the reflections are
// applied block by block on the sparse state; no global matrix is formed.
// A reflection acts as -1 off its projector's range, hence W is the identity
// on states outside both families.

#ifndef QWALK_DR_WALK_H
#define QWALK_DR_WALK_H

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qwalk/core.h"
#include "qwalk/line_walk.h"

namespace qwalk {

/// Sparse amplitudes over |n, m>.
class TwoCopyState {
   public:
    using Key = std::pair<std::int64_t, std::int64_t>;
    using Map = std::map<Key, Complex>;

    TwoCopyState() = default;
    explicit TwoCopyState(Map amplitudes) : amps_(std::move(amplitudes)) {}
    static TwoCopyState basis(std::int64_t n, std::int64_t m) { return TwoCopyState(Map{{{n, m}, Complex(1.0)}}); }

    Complex at(std::int64_t n, std::int64_t m) const;
    void add(std::int64_t n, std::int64_t m, Complex z) { amps_[{n, m}] += z; }
    /// Drops exact zeros.
    void compact();

    const Map &amplitudes() const { return amps_; }
    double norm_squared() const;
    /// Largest |a - b| over the union of supports.
    double max_difference(const TwoCopyState &other) const;

   private:
    Map amps_;
};

/// A finitely supported sequence sum_j D_j |base + j>, stored as (j, D_j).
using OffsetAmplitudes = std::vector<std::pair<std::int64_t, Complex>>;
using SequenceFamily = std::function<OffsetAmplitudes(std::int64_t)>;

/// 2 Pi_A - I with Pi_A = sum_n |n><n| (x) |P_n><P_n|.
TwoCopyState reflect_first_block(const SequenceFamily &p, const TwoCopyState &state);
/// 2 Pi_B - I with Pi_B = sum_m |Q_m><Q_m| (x) |m><m|.
TwoCopyState reflect_second_block(const SequenceFamily &q, const TwoCopyState &state);

/// Double-reflection step for arbitrary finitely supported P_n, Q_m.
TwoCopyState generalized_dr_step(const SequenceFamily &p, const SequenceFamily &q, const TwoCopyState &state);

/// |p_n> = d_n|n+1> + e_n|n-1>, |q_m> = f_m|m+1> + g_m|m-1>.
class DRSpec {
   public:
    using Field = std::function<Complex(std::int64_t)>;

    DRSpec(Field d, Field e, Field f, Field g);
    static DRSpec constant(Complex d, Complex e, Complex f, Complex g);

    /// Values at n; throws NormViolation unless |d|^2+|e|^2 = |f|^2+|g|^2 = 1 within 1e-12.
    std::array<Complex, 4> at(std::int64_t n) const;

    SequenceFamily p_family() const;
    SequenceFamily q_family() const;

   private:
    Field d_, e_, f_, g_;
};

TwoCopyState dr_step(const DRSpec &spec, const TwoCopyState &state);

/// Constant d = f = sqrt(2 + sqrt2)/2, e = g = sqrt(2 - sqrt2)/2.
DRSpec hadamard_dr_spec();
/// d_n = f_n = sqrt(1 + sin(n pi/k))/sqrt2, e_n = g_n = sqrt(1 - sin(n pi/k))/sqrt2.
DRSpec periodic_dr_spec(int k);

/// Coins U_n for the first step and U~_n for the second step of S C~ S C.
struct PDCTwoStepSpec {
    CoinMap first;
    CoinMap second;
};

/// How a coin state |n, c> sits in the two-copy space, and which shift acts.
///  Standard: |n,L> = |n,n+1>, |n,R> = |n,n-1>; S moves L left and R right.
///  Flip:     |n,L> = |n,n-1>, |n,R> = |n,n+1>; S sends |n,L> -> |n-1,R> and
///            |n,R> -> |n+1,L>, which is the swap |n,m> -> |m,n>.
enum class ShiftKind { Standard, Flip };

struct UnsupportedSupport : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// W = S C~ S C. Throws UnsupportedSupport for amplitude off m = n +/- 1.
TwoCopyState pdc_two_step(const PDCTwoStepSpec &spec, const TwoCopyState &state,
                          ShiftKind shift = ShiftKind::Standard);

/// Coins that reproduce dr_step(spec) under the given embedding.
///  Standard: alpha = 2 conj(d) e, beta = -(2|e|^2 - 1), theta = 0 (f, g likewise).
///  Flip: each coin is the local reflection 2|p><p| - I, i.e.
///        alpha = 2|e|^2 - 1, beta = 2 d conj(e), theta = pi.
PDCTwoStepSpec pdc_from_dr(const DRSpec &spec, ShiftKind shift = ShiftKind::Standard);

/// Both steps use alpha = beta = 1/sqrt2 and theta = pi/2; its diagonal
/// element is -i/2 (standard shift) or i/2 (flip shift).
PDCTwoStepSpec separating_pdc_spec();

/// <n,n+1| W |n,n+1>.
Complex realness_witness(const DRSpec &spec, std::int64_t n);
Complex realness_witness(const PDCTwoStepSpec &spec, std::int64_t n, ShiftKind shift = ShiftKind::Standard);
Complex generalized_dr_witness(const SequenceFamily &p, const SequenceFamily &q, std::int64_t n);

/// (2 |<n|Q_{n+1}>|^2 - 1)(2 |<n+1|P_n>|^2 - 1), the closed form of the
/// generalized witness.
double generalized_witness_closed_form(const SequenceFamily &p, const SequenceFamily &q, std::int64_t n);

// ---- Double-reflection attempt at the urn -------------------------------

/// Sparse amplitudes over |r, b>|r', b'>, keyed (r, b, r', b').
using UrnPairKey = std::array<std::int64_t, 4>;
using UrnPairState = std::map<UrnPairKey, Complex>;

/// |p_{r,b}> = alpha|r+1,b> + beta|r,b+1>, |q_{r,b}> = gamma|r+1,b> + delta|r,b+1>.
struct PolyaDRParams {
    std::function<std::array<Complex, 4>(std::int64_t r, std::int64_t b)> at;  // alpha, beta, gamma, delta
};

UrnPairState polya_dr_step(const PolyaDRParams &params, const UrnPairState &state);

}  // namespace qwalk

#endif  // QWALK_DR_WALK_H
