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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qwalk/sampling.h"
#include "qwalk/spectral.h"
#include "test_util.h"

namespace qwalk {
namespace {

constexpr double kPi = std::numbers::pi;

// Oracle: evolve a basis state on the line for 2*delta steps and read off the
// amplitude that lands on the target site.
TEST(PathCoefficients, MatchDirectEvolution) {
    Rng rng(21);
    for (int delta = 1; delta <= 4; ++delta) {
        const PeriodicCoinSpec spec = random_periodic_spec(rng, delta);
        const CoinMap coins = CoinMap::periodic(spec);
        const PathCoefficients c = path_coefficients(spec);
        for (int i = 0; i < delta; ++i) {
            for (int j = 0; j <= 2 * delta; ++j) {
                const std::int64_t source = 2 * i + 2 * j - 2 * delta;
                Matrix2c expected;
                for (int chirality = 0; chirality < 2; ++chirality) {
                    const LineWalkState start =
                        LineWalkState::localized(source, chirality == 0 ? 1.0 : 0.0, chirality == 1 ? 1.0 : 0.0);
                    expected.col(chirality) = evolve(start, coins, 2 * delta).at(2 * i);
                }
                EXPECT_LE(testing::max_abs(c(i, j) - expected), 1e-14) << "delta=" << delta << " i=" << i << " j=" << j;
            }
        }
    }
}

// c_{0,0} and c_{0,1} written out as products of half-step matrices for a
// period-6 walk, with the source site rightmost.
TEST(PathCoefficients, ExplicitPeriodSixFormulas) {
    Rng rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        const PeriodicCoinSpec spec = random_periodic_spec(rng, 3);
        auto P = [&spec](int n) { return half_step(spec.at(n)).plus; };
        auto M = [&spec](int n) { return half_step(spec.at(n)).minus; };
        const Matrix2c c00 = P(5) * P(4) * P(3) * P(2) * P(1) * P(0);
        const Matrix2c c01 = P(5) * P(4) * P(3) * P(2) * P(1) * M(2) + P(5) * P(4) * P(3) * P(2) * M(3) * P(2) +
                             P(5) * P(4) * P(3) * M(4) * P(3) * P(2) + P(5) * P(4) * M(5) * P(4) * P(3) * P(2) +
                             P(5) * M(0) * P(5) * P(4) * P(3) * P(2) + M(1) * P(0) * P(5) * P(4) * P(3) * P(2);
        const PathCoefficients c = path_coefficients(spec);
        EXPECT_LE(testing::max_abs(c(0, 0) - c00), 1e-15);
        EXPECT_LE(testing::max_abs(c(0, 1) - c01), 1e-15);
    }
}

TEST(PathCoefficients, PeriodTooLarge) {
    const PeriodicCoinSpec big(9, std::vector<Coin>(18, Coin::hadamard()));
    EXPECT_THROW(path_coefficients(big), PeriodTooLarge);
    EXPECT_THROW(build_bloch(big), PeriodTooLarge);
    EXPECT_NO_THROW(path_coefficients(PeriodicCoinSpec(8, std::vector<Coin>(16, Coin::hadamard()))));
}

TEST(HalfStep, SplitsRows) {
    const HalfStepMatrices h = half_step(Coin::hadamard());
    EXPECT_LE(testing::max_abs(h.plus + h.minus - Coin::hadamard().matrix()), 0.0);
    EXPECT_EQ(h.plus.row(0).norm(), 0.0);
    EXPECT_EQ(h.minus.row(1).norm(), 0.0);
}

TEST(BlochOperator, PathSumAgreesWithSingleStepProduct) {
    Rng rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        const PeriodicCoinSpec spec = random_periodic_spec(rng, 1 + trial % 4);
        for (Sublattice sub : {Sublattice::Even, Sublattice::Odd}) {
            const BlochOperator u = build_bloch(spec, sub);
            for (int m = 0; m < 16; ++m) {
                const double omega = -kPi + 2.0 * kPi * m / 16.0 + 0.01;
                EXPECT_LE(testing::max_abs(u.evaluate(omega) - bloch_from_single_steps(spec, sub, omega)), 1e-12);
                EXPECT_TRUE(is_unitary(u.evaluate(omega), 1e-12));
            }
        }
    }
}

// Oracle: a plane wave e^{i n w} v over the cells of a ring, pushed through
// 2*delta applications of the dense ring operator, comes back as
// e^{i n w} U(w) v.
TEST(BlochOperator, PlaneWavesOnARing) {
    Rng rng(9);
    const int delta = 3, cells = 8, sites = 2 * delta * cells;
    const PeriodicCoinSpec spec = random_periodic_spec(rng, delta);
    testing::DenseRing ring{sites, [&spec](int n) { return spec.at(n).matrix(); }};
    MatrixXc cycle = MatrixXc::Identity(2 * sites, 2 * sites);
    const MatrixXc w = ring.operator_matrix();
    for (int s = 0; s < 2 * delta; ++s) cycle = w * cycle;

    const BlochOperator u = build_bloch(spec);
    for (int q = 0; q < cells; ++q) {
        const double omega = 2.0 * kPi * q / cells;
        VectorXc v(2 * delta);
        for (int j = 0; j < 2 * delta; ++j) v(j) = random_complex(rng);
        VectorXc wave = VectorXc::Zero(2 * sites);
        for (int n = 0; n < cells; ++n) {
            for (int i = 0; i < delta; ++i) {
                const int site = 2 * delta * n + 2 * i;
                wave(2 * site) = std::polar(1.0, n * omega) * v(2 * i);
                wave(2 * site + 1) = std::polar(1.0, n * omega) * v(2 * i + 1);
            }
        }
        const VectorXc out = cycle * wave;
        const VectorXc expected_cell = u.evaluate(omega) * v;
        for (int n = 0; n < cells; ++n) {
            for (int i = 0; i < delta; ++i) {
                const int site = 2 * delta * n + 2 * i;
                for (int c = 0; c < 2; ++c) {
                    EXPECT_NEAR(std::abs(out(2 * site + c) - std::polar(1.0, n * omega) * expected_cell(2 * i + c)),
                                0.0, 1e-12);
                }
            }
        }
    }
}

TEST(BlochOperator, DerivativeMatchesFiniteDifference) {
    Rng rng(12);
    const BlochOperator u = build_bloch(random_periodic_spec(rng, 3));
    const double h = 1e-6, omega = 0.37;
    const MatrixXc fd = (u.evaluate(omega + h) - u.evaluate(omega - h)) / (2.0 * h);
    EXPECT_LE(testing::max_abs(fd - u.derivative(omega)), 1e-8);
}

TEST(BandStructure, RejectsBadGrid) {
    const BlochOperator u = build_bloch(periodic_spec(3));
    EXPECT_THROW(band_structure(u, 32), std::invalid_argument);
    EXPECT_THROW(band_structure(u, 65), std::invalid_argument);
}

TEST(BandStructure, FlatForBoundedRotationWalks) {
    for (int k : {2, 4}) {
        const SpectralReport rep = asymptotic_moments(periodic_spec(k), symmetric_initial_state(), 2048);
        EXPECT_LE(max_band_deviation(rep.bands), 1e-8) << "k=" << k;
        EXPECT_LE(rep.var_coeff, 1e-12);
        EXPECT_TRUE(rep.flat_bands);
        EXPECT_FALSE(rep.indeterminate_order);
    }
}

TEST(BandStructure, VelocitiesMatchFiniteDifferences) {
    Rng rng(13);
    std::vector<PeriodicCoinSpec> specs{periodic_spec(3), periodic_spec(5), periodic_spec(7)};
    for (int d = 1; d <= 4; ++d) specs.push_back(random_periodic_spec(rng, d));
    for (const auto &spec : specs) {
        const BlochOperator u = build_bloch(spec);
        const BandStructure b = band_structure(u, 512);
        EXPECT_LE(finite_difference_deviation(u, b), 1e-6);
        for (const auto &band : b.velocity) {
            for (double v : band) EXPECT_LE(std::abs(v), 1.0 + 1e-9);
        }
    }
}

TEST(BandStructure, PhasesAreContinuous) {
    const BandStructure b = band_structure(build_bloch(periodic_spec(5)), 2048);
    for (const auto &band : b.phase) {
        for (std::size_t m = 1; m < band.size(); ++m) EXPECT_LE(std::abs(band[m] - band[m - 1]), 0.05);
    }
    EXPECT_FALSE(b.degenerate_crossing);
}

// Three levels whose eigenvectors at w = 0 are the discrete Fourier basis but
// are nearly the standard basis one grid step away: no label can be matched.
TEST(BandStructure, FlagsAmbiguousMatching) {
    const double eps = 1e-6;
    MatrixXc f(3, 3);
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) f(a, b) = std::polar(1.0 / std::sqrt(3.0), 2.0 * kPi * a * b / 3.0);
    }
    const Eigen::Vector3cd twist(1.0, std::polar(1.0, eps), std::polar(1.0, 2.0 * eps));
    const MatrixXc v = f * twist.asDiagonal() * f.adjoint();
    MatrixXc left = MatrixXc::Zero(3, 3), centre = MatrixXc::Zero(3, 3), right = MatrixXc::Zero(3, 3);
    right.row(0) = v.row(0);
    centre.row(1) = v.row(1);
    left.row(2) = v.row(2);
    const BlochOperator u(1, Sublattice::Even, left, centre, right);
    const BandStructure b = band_structure(u, 64);
    EXPECT_TRUE(b.degenerate_crossing);
    EXPECT_TRUE(b.ambiguous[32]);  // w = 0
    EXPECT_FALSE(b.ambiguous[10]);
}

TEST(AsymptoticMoments, IdentityCoinAnalytic) {
    const PeriodicCoinSpec spec(3, std::vector<Coin>(6, Coin::identity()));
    const SpectralReport rep = asymptotic_moments(spec, symmetric_initial_state(), 2048);
    EXPECT_NEAR(rep.drift, 0.0, 1e-10);
    EXPECT_NEAR(rep.var_coeff, 1.0, 1e-10);
    // |L> alone runs left at unit speed.
    const SpectralReport left = asymptotic_moments(spec, LineWalkState::localized(0, 1.0, 0.0), 2048);
    EXPECT_NEAR(left.drift, -1.0, 1e-10);
    EXPECT_NEAR(left.var_coeff, 0.0, 1e-10);
}

TEST(AsymptoticMoments, WeightsAreNormalized) {
    Rng rng(14);
    for (int d = 1; d <= 4; ++d) {
        const auto [a, b] = random_unit_pair(rng);
        const SpectralReport rep =
            asymptotic_moments(random_periodic_spec(rng, d), LineWalkState::localized(2 * d - 1, a, b), 256);
        EXPECT_LE(rep.max_weight_norm_error, 1e-12);
    }
}

TEST(AsymptoticMoments, RotationWeightsComeInIdenticalPairs) {
    const SpectralReport rep = asymptotic_moments(periodic_spec(3), symmetric_initial_state(), 2048);
    ASSERT_EQ(rep.bands.dim, 6);
    for (int l = 0; l < 6; ++l) {
        int partners = 0;
        for (int r = 0; r < 6; ++r) {
            if (r == l) continue;
            double diff = 0.0;
            for (std::size_t m = 0; m < rep.bands.omega.size(); ++m) {
                diff = std::max(diff, std::abs(rep.band_weights[l][m] - rep.band_weights[r][m]));
            }
            if (diff <= 1e-9) ++partners;
        }
        EXPECT_EQ(partners, 1) << "band " << l;
    }
}

// Oracle: drift and spread against the slopes of the simulated mean and
// stddev between two multiples of the period.
TEST(AsymptoticMoments, MatchSimulatedSlopes) {
    Rng rng(15);
    for (int trial = 0; trial < 6; ++trial) {
        const int delta = 1 + trial % 3;
        const PeriodicCoinSpec spec = random_periodic_spec(rng, delta);
        const auto [a, b] = random_unit_pair(rng);
        const std::int64_t start = trial % 2;  // both sublattices
        const LineWalkState initial = LineWalkState::localized(start, a, b);
        const SpectralReport rep = asymptotic_moments(spec, initial, 2048);

        const std::int64_t t1 = 1200 * delta, t2 = 2400 * delta;
        const CoinMap coins = CoinMap::periodic(spec);
        const LineWalkState s1 = evolve(initial, coins, t1);
        const LineWalkState s2 = evolve(s1, coins, t2 - t1);
        const Moments m1 = moments(distribution(s1)), m2 = moments(distribution(s2));
        const double mean_slope = (m2.mean - m1.mean) / static_cast<double>(t2 - t1);
        const double sd_slope = (m2.stddev - m1.stddev) / static_cast<double>(t2 - t1);
        EXPECT_NEAR(rep.drift, mean_slope, 5e-3) << "trial " << trial;
        EXPECT_NEAR(std::sqrt(rep.var_coeff), sd_slope, 5e-3) << "trial " << trial;
    }
}

TEST(CellState, Validation) {
    const PeriodicCoinSpec spec = periodic_spec(3);
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_THROW(cell_state(spec, LineWalkState(0, {Vector2c(h, 0.0), Vector2c(0.0, h)})), std::invalid_argument);
    EXPECT_THROW(cell_state(spec, LineWalkState(4, {Vector2c(h, 0.0), Vector2c::Zero(), Vector2c(0.0, h)})),
                 std::invalid_argument);
    EXPECT_THROW(cell_state(spec, LineWalkState(0, {Vector2c(1.0, 1.0)})), NormViolation);

    const CellState c = cell_state(spec, LineWalkState(2, {Vector2c(h, 0.0), Vector2c::Zero(), Vector2c(0.0, h)}));
    EXPECT_EQ(c.sublattice, Sublattice::Even);
    EXPECT_EQ(c.cell, 0);
    EXPECT_EQ(c.amplitudes(2), Complex(h));
    EXPECT_EQ(c.amplitudes(5), Complex(h));

    const CellState odd = cell_state(spec, LineWalkState::localized(-5, 1.0, 0.0));
    EXPECT_EQ(odd.sublattice, Sublattice::Odd);
    EXPECT_EQ(odd.cell, -1);
    EXPECT_EQ(odd.amplitudes(0), Complex(1.0));
}

}  // namespace
}  // namespace qwalk
