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

#include "qwalk/spectral.h"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "qwalk/parallel.h"

namespace qwalk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Eigenphases closer than this are treated as one degenerate cluster.
constexpr double kClusterGap = 1e-8;
constexpr double kMinOverlap = 0.7;
constexpr double kFlatVelocity = 1e-8;
constexpr double kVanishingVariance = 1e-12;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

PeriodicCoinSpec for_sublattice(const PeriodicCoinSpec &spec, Sublattice sublattice) {
    return sublattice == Sublattice::Even ? spec : spec.shifted(1);
}

// Eigen-data at one grid point, before labels are attached.
struct PointSpectrum {
    std::vector<double> phase;
    std::vector<double> velocity;
    MatrixXc vectors;
    std::vector<int> cluster;  // cluster id per column
};

PointSpectrum diagonalize(const BlochOperator &bloch, double omega) {
    const MatrixXc u = bloch.evaluate(omega);
    const MatrixXc generator = Complex(0.0, -1.0) * (u.adjoint() * bloch.derivative(omega));
    const auto pairs = eig_unitary(SmallUnitary(u));
    const auto dim = static_cast<int>(pairs.size());

    PointSpectrum ps;
    ps.phase.resize(pairs.size());
    ps.velocity.assign(pairs.size(), 0.0);
    ps.vectors.resize(dim, dim);
    ps.cluster.assign(pairs.size(), 0);
    for (int l = 0; l < dim; ++l) {
        ps.phase[l] = pairs[l].phase;
        ps.vectors.col(l) = pairs[l].vector;
    }

    // Consecutive phases (sorted) closer than kClusterGap share a cluster; the
    // last cluster may wrap across +/-pi into the first.
    int id = 0;
    for (int l = 1; l < dim; ++l) {
        if (ps.phase[l] - ps.phase[l - 1] >= kClusterGap) ++id;
        ps.cluster[l] = id;
    }
    if (id > 0 && ps.phase[0] + kTwoPi - ps.phase[dim - 1] < kClusterGap) {
        for (int l = 0; l < dim; ++l) {
            if (ps.cluster[l] == id) ps.cluster[l] = 0;
        }
    }

    std::vector<int> members;
    for (int c = 0; c <= id; ++c) {
        members.clear();
        for (int l = 0; l < dim; ++l) {
            if (ps.cluster[l] == c) members.push_back(l);
        }
        if (members.empty()) continue;
        const auto size = static_cast<Eigen::Index>(members.size());
        MatrixXc block(dim, size);
        for (Eigen::Index s = 0; s < size; ++s) block.col(s) = ps.vectors.col(members[s]);
        const MatrixXc restricted = block.adjoint() * generator * block;
        const MatrixXc hermitian = 0.5 * (restricted + restricted.adjoint());
        Eigen::SelfAdjointEigenSolver<MatrixXc> solver(hermitian);
        const MatrixXc rotated = block * solver.eigenvectors();
        for (Eigen::Index s = 0; s < size; ++s) {
            ps.vectors.col(members[s]) = rotated.col(s);
            ps.velocity[members[s]] = solver.eigenvalues()(s);
        }
    }
    return ps;
}

}  // namespace

HalfStepMatrices half_step(const Coin &coin) {
    HalfStepMatrices h;
    h.plus = Matrix2c::Zero();
    h.minus = Matrix2c::Zero();
    h.plus.row(1) = coin.matrix().row(1);
    h.minus.row(0) = coin.matrix().row(0);
    return h;
}

PathCoefficients path_coefficients(const PeriodicCoinSpec &spec) {
    const int delta = spec.delta();
    if (delta > kMaxPathDelta) throw PeriodTooLarge("path_coefficients: delta exceeds 8");
    const int steps = 2 * delta;

    std::vector<HalfStepMatrices> half;
    half.reserve(static_cast<std::size_t>(steps));
    for (int n = 0; n < steps; ++n) half.push_back(half_step(spec.at(n)));

    std::vector<Matrix2c> c(static_cast<std::size_t>(delta * (steps + 1)), Matrix2c::Zero());
    const std::uint32_t paths = 1u << steps;
    for (int i = 0; i < delta; ++i) {
        for (std::uint32_t mask = 0; mask < paths; ++mask) {
            // bit b set: move b goes left
            const int j = std::popcount(mask);
            std::int64_t site = 2 * i - steps + 2 * j;
            Matrix2c product = Matrix2c::Identity();
            for (int b = 0; b < steps; ++b) {
                const auto &h = half[static_cast<std::size_t>(((site % steps) + steps) % steps)];
                if (mask & (1u << b)) {
                    product = h.minus * product;
                    --site;
                } else {
                    product = h.plus * product;
                    ++site;
                }
            }
            c[static_cast<std::size_t>(i * (steps + 1) + j)] += product;
        }
    }
    return PathCoefficients(delta, std::move(c));
}

BlochOperator::BlochOperator(int delta, Sublattice sublattice, MatrixXc left, MatrixXc centre, MatrixXc right)
    : delta_(delta),
      sublattice_(sublattice),
      left_(std::move(left)),
      centre_(std::move(centre)),
      right_(std::move(right)) {}

MatrixXc BlochOperator::evaluate(double omega) const {
    return left_ * std::polar(1.0, -omega) + centre_ + right_ * std::polar(1.0, omega);
}

MatrixXc BlochOperator::derivative(double omega) const {
    return left_ * (Complex(0.0, -1.0) * std::polar(1.0, -omega)) + right_ * (kI * std::polar(1.0, omega));
}

BlochOperator build_bloch(const PeriodicCoinSpec &spec, Sublattice sublattice) {
    const PeriodicCoinSpec walk = for_sublattice(spec, sublattice);
    const int delta = walk.delta();
    const int dim = 2 * delta;
    const PathCoefficients c = path_coefficients(walk);

    MatrixXc left = MatrixXc::Zero(dim, dim);
    MatrixXc centre = MatrixXc::Zero(dim, dim);
    MatrixXc right = MatrixXc::Zero(dim, dim);
    for (int i = 0; i < delta; ++i) {
        for (int j = 0; j <= 2 * delta; ++j) {
            // source sub-site index relative to the target cell, in units of 2 sites
            const int k = i + j - delta;
            const int q = static_cast<int>(floor_div(k, delta));
            const int source = k - q * delta;
            MatrixXc &target = q < 0 ? left : (q == 0 ? centre : right);
            target.block(2 * i, 2 * source, 2, 2) += c(i, j);
        }
    }
    return BlochOperator(delta, sublattice, std::move(left), std::move(centre), std::move(right));
}

MatrixXc bloch_from_single_steps(const PeriodicCoinSpec &spec, Sublattice sublattice, double omega) {
    const PeriodicCoinSpec walk = for_sublattice(spec, sublattice);
    const int sites = walk.period();
    const int full = 2 * sites;

    MatrixXc one_step = MatrixXc::Zero(full, full);
    for (int s = 0; s < sites; ++s) {
        const Matrix2c &coin = walk.at(s).matrix();
        const int left_target = s == 0 ? sites - 1 : s - 1;
        const Complex left_phase = s == 0 ? std::polar(1.0, omega) : Complex(1.0);
        const int right_target = s == sites - 1 ? 0 : s + 1;
        const Complex right_phase = s == sites - 1 ? std::polar(1.0, -omega) : Complex(1.0);
        for (int col = 0; col < 2; ++col) {
            one_step(2 * left_target, 2 * s + col) += left_phase * coin(0, col);
            one_step(2 * right_target + 1, 2 * s + col) += right_phase * coin(1, col);
        }
    }
    MatrixXc cycle = MatrixXc::Identity(full, full);
    for (int t = 0; t < sites; ++t) cycle = one_step * cycle;

    const int dim = sites;
    MatrixXc u(dim, dim);
    for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) {
            // Bloch index 2i + c is site 2i, chirality c, i.e. full index 4i + c
            const int fa = 4 * (a / 2) + a % 2;
            const int fb = 4 * (b / 2) + b % 2;
            u(a, b) = cycle(fa, fb);
        }
    }
    return u;
}

BandStructure band_structure(const BlochOperator &bloch, int grid_size) {
    if (grid_size < 64 || grid_size % 2 != 0) {
        throw std::invalid_argument("band_structure: grid size must be even and >= 64");
    }
    const auto m_count = static_cast<std::size_t>(grid_size);
    const int dim = static_cast<int>(bloch.dim());

    BandStructure bands;
    bands.dim = dim;
    bands.omega.resize(m_count);
    for (std::size_t m = 0; m < m_count; ++m) {
        bands.omega[m] = -std::numbers::pi + kTwoPi * static_cast<double>(m) / static_cast<double>(grid_size);
    }

    std::vector<PointSpectrum> points(m_count);
    parallel_for(m_count, [&](std::size_t m) { points[m] = diagonalize(bloch, bands.omega[m]); });

    bands.phase.assign(static_cast<std::size_t>(dim), std::vector<double>(m_count));
    bands.velocity.assign(static_cast<std::size_t>(dim), std::vector<double>(m_count));
    bands.eigenvectors.resize(m_count);
    bands.ambiguous.assign(m_count, false);

    // label l -> column of points[m]
    std::vector<int> column(static_cast<std::size_t>(dim));
    for (int l = 0; l < dim; ++l) column[l] = l;

    for (std::size_t m = 0; m < m_count; ++m) {
        const PointSpectrum &ps = points[m];
        if (m > 0) {
            const MatrixXc &prev = bands.eigenvectors[m - 1];
            const Eigen::MatrixXd overlap = (prev.adjoint() * ps.vectors).cwiseAbs();
            std::vector<bool> label_done(static_cast<std::size_t>(dim), false);
            std::vector<bool> col_done(static_cast<std::size_t>(dim), false);
            for (int assigned = 0; assigned < dim; ++assigned) {
                double best = -1.0;
                int bl = 0;
                int bc = 0;
                for (int l = 0; l < dim; ++l) {
                    if (label_done[l]) continue;
                    for (int c = 0; c < dim; ++c) {
                        if (!col_done[c] && overlap(l, c) > best) {
                            best = overlap(l, c);
                            bl = l;
                            bc = c;
                        }
                    }
                }
                label_done[bl] = true;
                col_done[bc] = true;
                column[bl] = bc;
            }
            // Ambiguity is judged against the whole degenerate cluster the
            // label landed in, so a free basis choice inside it is not flagged.
            for (int l = 0; l < dim; ++l) {
                double captured = 0.0;
                for (int c = 0; c < dim; ++c) {
                    if (ps.cluster[c] == ps.cluster[column[l]]) captured += overlap(l, c) * overlap(l, c);
                }
                if (std::sqrt(captured) < kMinOverlap) bands.ambiguous[m] = true;
            }
        }

        MatrixXc ordered(dim, dim);
        for (int l = 0; l < dim; ++l) {
            const int c = column[l];
            ordered.col(l) = ps.vectors.col(c);
            double phase = ps.phase[c];
            if (m > 0) {
                const double previous = bands.phase[l][m - 1];
                phase += kTwoPi * std::round((previous - phase) / kTwoPi);
            }
            bands.phase[l][m] = phase;
            bands.velocity[l][m] = ps.velocity[c];
        }
        bands.eigenvectors[m] = std::move(ordered);
        if (bands.ambiguous[m]) bands.degenerate_crossing = true;
        const bool shared = std::any_of(ps.cluster.begin(), ps.cluster.end(), [&ps](int id) {
            return std::count(ps.cluster.begin(), ps.cluster.end(), id) > 1;
        });
        if (shared) ++bands.degenerate_points;
    }
    return bands;
}

double max_band_deviation(const BandStructure &bands) {
    double worst = 0.0;
    for (const auto &band : bands.phase) {
        for (double p : band) worst = std::max(worst, std::abs(p - band.front()));
    }
    return worst;
}

double finite_difference_deviation(const BlochOperator &bloch, const BandStructure &bands, double h) {
    constexpr double kIsolation = 1e-4;
    const std::size_t m_count = bands.omega.size();
    std::vector<double> worst(m_count, 0.0);

    parallel_for(m_count, [&](std::size_t m) {
        if (bands.ambiguous[m]) return;
        const double omega = bands.omega[m];
        const auto plus = eig_unitary(SmallUnitary(bloch.evaluate(omega + h)));
        const auto minus = eig_unitary(SmallUnitary(bloch.evaluate(omega - h)));
        auto nearest = [](const std::vector<Eigenpair> &pairs, double target) {
            double best = pairs.front().phase;
            double best_gap = 1e300;
            for (const auto &p : pairs) {
                const double gap = std::abs(wrap_phase(p.phase - target));
                if (gap < best_gap) {
                    best_gap = gap;
                    best = p.phase;
                }
            }
            return best;
        };
        for (int l = 0; l < bands.dim; ++l) {
            const double phase = bands.phase[l][m];
            double gap = 1e300;
            for (int other = 0; other < bands.dim; ++other) {
                if (other != l) gap = std::min(gap, std::abs(wrap_phase(bands.phase[other][m] - phase)));
            }
            if (gap < kIsolation) continue;
            const double up = phase + wrap_phase(nearest(plus, phase) - phase);
            const double down = phase + wrap_phase(nearest(minus, phase) - phase);
            const double fd = (up - down) / (2.0 * h);
            worst[m] = std::max(worst[m], std::abs(fd - bands.velocity[l][m]));
        }
    });
    return *std::max_element(worst.begin(), worst.end());
}

CellState cell_state(const PeriodicCoinSpec &spec, const LineWalkState &initial) {
    const int delta = spec.delta();
    const std::int64_t period = spec.period();
    if (std::abs(initial.norm_squared() - 1.0) > kStateTolerance) {
        throw NormViolation("cell_state: initial state must be normalized");
    }
    CellState out;
    out.amplitudes = VectorXc::Zero(2 * delta);
    bool seen = false;
    std::int64_t parity = 0;
    const auto amps = initial.amplitudes();
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        if (amps[idx].isZero(0.0)) continue;
        const std::int64_t x = initial.first_position() + static_cast<std::int64_t>(idx);
        const std::int64_t p = ((x % 2) + 2) % 2;
        const std::int64_t y = x - p;
        const std::int64_t cell = floor_div(y, period);
        if (!seen) {
            seen = true;
            parity = p;
            out.cell = cell;
            out.sublattice = p == 0 ? Sublattice::Even : Sublattice::Odd;
        } else if (p != parity || cell != out.cell) {
            throw std::invalid_argument("cell_state: support must lie in one cell of one sublattice");
        }
        const auto offset = static_cast<Eigen::Index>((y - cell * period) / 2);
        out.amplitudes(2 * offset) = amps[idx](0);
        out.amplitudes(2 * offset + 1) = amps[idx](1);
    }
    if (!seen) throw std::invalid_argument("cell_state: empty state");
    return out;
}

MatrixXc alphas(const BandStructure &bands, const CellState &initial, std::size_t omega_index) {
    const double omega = bands.omega.at(omega_index);
    const VectorXc transformed = initial.amplitudes * std::polar(1.0, -omega * static_cast<double>(initial.cell));
    const MatrixXc &v = bands.eigenvectors[omega_index];
    const VectorXc projection = v.adjoint() * transformed;
    return v * projection.asDiagonal();
}

SpectralReport asymptotic_moments(const PeriodicCoinSpec &spec, const LineWalkState &initial, int grid_size) {
    const CellState cell = cell_state(spec, initial);
    const BlochOperator bloch = build_bloch(spec, cell.sublattice);

    SpectralReport report;
    report.bands = band_structure(bloch, grid_size);
    const BandStructure &bands = report.bands;
    const int dim = bands.dim;
    const std::size_t m_count = bands.omega.size();

    report.band_weights.assign(static_cast<std::size_t>(dim), std::vector<double>(m_count));
    double max_speed = 0.0;
    for (std::size_t m = 0; m < m_count; ++m) {
        const MatrixXc a = alphas(bands, cell, m);
        const Eigen::VectorXd weights = a.cwiseAbs2().colwise().sum().transpose();
        report.max_weight_norm_error = std::max(report.max_weight_norm_error, std::abs(weights.sum() - 1.0));
        for (int l = 0; l < dim; ++l) {
            report.band_weights[l][m] = weights(l);
            max_speed = std::max(max_speed, std::abs(bands.velocity[l][m]));
        }
    }

    // (1/2pi) \int dw f(w) on the periodic grid is the plain average.
    double band_mean = 0.0;
    for (std::size_t m = 0; m < m_count; ++m) {
        for (int l = 0; l < dim; ++l) band_mean += report.band_weights[l][m] * bands.velocity[l][m];
    }
    band_mean /= static_cast<double>(m_count);

    double spread = 0.0;
    for (std::size_t m = 0; m < m_count; ++m) {
        for (int l = 0; l < dim; ++l) {
            const double d = bands.velocity[l][m] - band_mean;
            spread += report.band_weights[l][m] * d * d;
        }
    }
    spread /= static_cast<double>(m_count);

    report.drift = 0.0 - band_mean;
    report.var_coeff = spread;
    report.flat_bands = max_speed <= kFlatVelocity;
    report.degenerate_crossing = bands.degenerate_crossing;
    report.degenerate_points = bands.degenerate_points;
    report.indeterminate_order = spread < kVanishingVariance && !report.flat_bands;
    return report;
}

}  // namespace qwalk
