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

// Bloch analysis of walks whose coin has period 2*delta.
//
// Sites are grouped into cells of `delta` same-parity sites: cell n of the
// even sublattice holds sites 2*delta*n + 2i, i = 0..delta-1, so a cell vector
// has 2*delta components ordered (L_0, R_0, L_1, R_1, ...). After 2*delta steps
// the amplitudes of a cell depend only on cells n-1, n and n+1; Fourier
// transforming over n (f(w) = sum_n e^{-inw} f(n)) turns one such cycle into a
// 2*delta x 2*delta unitary U(w). Its eigenphases lambda_l(w) are the bands and
// lambda_l'(w) their group velocities in cells per cycle, which equals sites
// per step.

#ifndef QWALK_SPECTRAL_H
#define QWALK_SPECTRAL_H

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qwalk/core.h"
#include "qwalk/line_walk.h"

namespace qwalk {

/// Row split of a coin: `plus` keeps the R (bottom) row and feeds the site to
/// the right, `minus` keeps the L (top) row and feeds the site to the left.
struct HalfStepMatrices {
    Matrix2c plus;
    Matrix2c minus;
};

HalfStepMatrices half_step(const Coin &coin);

struct PeriodTooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline constexpr int kMaxPathDelta = 8;

enum class Sublattice { Even, Odd };

/// c_{i,j}: the 2x2 matrix carrying Psi(2*delta*(n-1) + 2j + 2i, t) to
/// Psi(2*delta*n + 2i, t + 2*delta). Each is the sum, over all 2*delta-step
/// paths with exactly j left moves, of the ordered product of half-step
/// matrices at the visited sites.
class PathCoefficients {
   public:
    PathCoefficients(int delta, std::vector<Matrix2c> c) : delta_(delta), c_(std::move(c)) {}

    int delta() const { return delta_; }
    const Matrix2c &operator()(int i, int j) const {
        return c_[static_cast<std::size_t>(i * (2 * delta_ + 1) + j)];
    }

   private:
    int delta_;
    std::vector<Matrix2c> c_;
};

/// Enumerates all 2^(2*delta) paths. Throws PeriodTooLarge for delta > 8.
PathCoefficients path_coefficients(const PeriodicCoinSpec &spec);

/// U(w) = left e^{-iw} + centre + right e^{iw}.
class BlochOperator {
   public:
    BlochOperator(int delta, Sublattice sublattice, MatrixXc left, MatrixXc centre, MatrixXc right);

    int delta() const { return delta_; }
    Eigen::Index dim() const { return centre_.rows(); }
    Sublattice sublattice() const { return sublattice_; }

    MatrixXc evaluate(double omega) const;
    /// dU/dw, exact.
    MatrixXc derivative(double omega) const;

    const MatrixXc &left() const { return left_; }
    const MatrixXc &centre() const { return centre_; }
    const MatrixXc &right() const { return right_; }

   private:
    int delta_;
    Sublattice sublattice_;
    MatrixXc left_;
    MatrixXc centre_;
    MatrixXc right_;
};

/// Assembles U(w) from the path coefficients. The odd sublattice is the even
/// sublattice of the walk re-indexed from site 1.
BlochOperator build_bloch(const PeriodicCoinSpec &spec, Sublattice sublattice = Sublattice::Even);

/// Independent construction: the product of 2*delta single-step Bloch
/// matrices on the full 2*delta-site cell, restricted to one sublattice.
MatrixXc bloch_from_single_steps(const PeriodicCoinSpec &spec, Sublattice sublattice, double omega);

struct BandStructure {
    int dim = 0;
    std::vector<double> omega;                  // M points, -pi + 2 pi m / M
    std::vector<std::vector<double>> phase;     // [band][m], continuous along m
    std::vector<std::vector<double>> velocity;  // [band][m]
    std::vector<MatrixXc> eigenvectors;         // [m], column l is band l
    std::vector<bool> ambiguous;                // [m], overlap matching below 0.7
    bool degenerate_crossing = false;           // any ambiguous point
    std::int64_t degenerate_points = 0;         // grid points holding a multi-band cluster
};

/// Diagonalizes U on an M-point grid (M >= 64, even). Bands are followed by
/// maximal eigenvector overlap; velocities come from the expectation of
/// -i U^dagger dU/dw, diagonalized inside degenerate clusters.
BandStructure band_structure(const BlochOperator &bloch, int grid_size);

/// max_{l,m} |lambda_l(w_m) - lambda_l(w_0)|.
double max_band_deviation(const BandStructure &bands);

/// Largest gap between the analytic velocities and central differences of
/// the eigenphases at w +/- h, over bands isolated by at least 1e-4.
double finite_difference_deviation(const BlochOperator &bloch, const BandStructure &bands, double h = 1e-5);

/// A state supported on a single cell of one sublattice.
struct CellState {
    Sublattice sublattice = Sublattice::Even;
    std::int64_t cell = 0;
    VectorXc amplitudes;
};

/// Throws std::invalid_argument if the support spans several cells or mixes
/// parities, NormViolation if the state is not normalized.
CellState cell_state(const PeriodicCoinSpec &spec, const LineWalkState &initial);

/// alpha_{jl}(w_m) = (U0)_{jl} (U0^dagger psi(w_m))_l for the Fourier
/// transformed initial cell vector psi.
MatrixXc alphas(const BandStructure &bands, const CellState &initial, std::size_t omega_index);

struct SpectralReport {
    /// lim E(N, t)/t. The band integral of |alpha|^2 lambda' equals minus this
    /// (a band with phase -w per cycle moves right).
    double drift = 0.0;
    /// Var(N, t) ~ var_coeff * t^2 at t = 2*delta*T.
    double var_coeff = 0.0;
    bool flat_bands = false;
    bool degenerate_crossing = false;
    /// Grid points where some eigenphases coincide within 1e-8. The moments
    /// there use the basis that diagonalizes the velocity inside the cluster.
    std::int64_t degenerate_points = 0;
    /// var_coeff vanishes but the bands are not flat; the T^2 term says nothing.
    bool indeterminate_order = false;
    double max_weight_norm_error = 0.0;
    BandStructure bands;
    std::vector<std::vector<double>> band_weights;  // [l][m], sum_j |alpha_jl|^2
};

/// Trapezoid quadrature over the uniform periodic grid (default M = 2048).
SpectralReport asymptotic_moments(const PeriodicCoinSpec &spec, const LineWalkState &initial, int grid_size = 2048);

}  // namespace qwalk

#endif  // QWALK_SPECTRAL_H
