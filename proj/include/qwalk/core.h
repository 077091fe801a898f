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

#ifndef QWALK_CORE_H
#define QWALK_CORE_H

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwalk {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

inline constexpr double kCoinTolerance = 1e-12;
inline constexpr double kStateTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kEigenTolerance = 1e-9;

inline constexpr Complex kI{0.0, 1.0};

struct NormViolation : std::domain_error {
    using std::domain_error::domain_error;
};

struct NotUnitary : std::domain_error {
    using std::domain_error::domain_error;
};

/// |z|^2 without the sqrt round trip of std::abs.
inline double abs2(Complex z) { return z.real() * z.real() + z.imag() * z.imag(); }

/// True iff max_ij |(m^dagger m - I)_ij| <= tol. Non-square input is never unitary.
bool is_unitary(const MatrixXc &m, double tol);

/// A 2x2 unitary on the chirality space, ordered basis (L, R). Column j is the
/// image of basis vector j.
class Coin {
   public:
    Coin() : m_(Matrix2c::Identity()) {}

    /// Throws NotUnitary if m fails the unitarity check at `tol`.
    static Coin from_matrix(const Matrix2c &m, double tol = kCoinTolerance);

    static Coin identity() { return Coin(); }
    /// (|L> + |R>)/sqrt2 <- |L>,  (-|L> + |R>)/sqrt2 <- |R>.
    static Coin hadamard();
    /// (0, -1; 1, 0).
    static Coin reflecting();

    const Matrix2c &matrix() const { return m_; }
    Complex operator()(int row, int col) const { return m_(row, col); }
    Vector2c apply(const Vector2c &v) const { return m_ * v; }

    bool operator==(const Coin &o) const { return m_ == o.m_; }

   private:
    explicit Coin(const Matrix2c &m) : m_(m) {}
    Matrix2c m_;
};

/// The general unitary coin (alpha, -e^{i theta} conj(beta) ; beta, e^{i theta} conj(alpha)).
/// Throws NormViolation unless |alpha|^2 + |beta|^2 = 1 within 1e-10.
Coin make_coin(Complex alpha, Complex beta, double theta);

/// A small dense unitary (validated at construction to kUnitaryTolerance).
class SmallUnitary {
   public:
    explicit SmallUnitary(MatrixXc m, double tol = kUnitaryTolerance);

    Eigen::Index dim() const { return m_.rows(); }
    const MatrixXc &matrix() const { return m_; }

   private:
    MatrixXc m_;
};

struct Eigenpair {
    double phase;  // in (-pi, pi]
    VectorXc vector;
};

/// Eigen-decomposition of a unitary via its complex Schur form. For a normal
/// matrix the triangular factor is diagonal, so the Schur vectors are an
/// orthonormal eigenbasis, including inside degenerate clusters. Sorted by
/// ascending phase.
std::vector<Eigenpair> eig_unitary(const SmallUnitary &u);

/// Wraps an angle into (-pi, pi].
double wrap_phase(double phase);

/// Amplitudes of a walk on the integer line, stored densely over a contiguous
/// window [first, first + size). Positions outside the window hold zero.
class LineWalkState {
   public:
    LineWalkState() = default;
    LineWalkState(std::int64_t first, std::vector<Vector2c> amplitudes, std::int64_t time = 0);

    /// |n0> (a|L> + b|R>); throws NormViolation if |a|^2 + |b|^2 != 1 within 1e-10.
    static LineWalkState localized(std::int64_t n0, Complex left, Complex right);

    std::int64_t first_position() const { return first_; }
    std::int64_t last_position() const { return first_ + static_cast<std::int64_t>(amps_.size()) - 1; }
    std::int64_t time() const { return time_; }
    bool empty() const { return amps_.empty(); }

    /// (psi_L(n), psi_R(n)); zero outside the stored window.
    Vector2c at(std::int64_t n) const;
    std::span<const Vector2c> amplitudes() const { return amps_; }

    double norm_squared() const;

    /// Lossy: drops edge entries whose probability is below `threshold`
    /// (e.g. 1e-30). Interior zeros are kept so the window stays contiguous.
    void trim(double threshold);

   private:
    std::int64_t first_ = 0;
    std::vector<Vector2c> amps_;
    std::int64_t time_ = 0;
};

/// Worker count from QWALK_THREADS, else hardware concurrency (at least 1).
unsigned thread_count();

}  // namespace qwalk

#endif  // QWALK_CORE_H
