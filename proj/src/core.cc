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

#include "qwalk/core.h"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <thread>

namespace qwalk {

bool is_unitary(const MatrixXc &m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    const MatrixXc defect = m.adjoint() * m - MatrixXc::Identity(m.rows(), m.cols());
    return defect.cwiseAbs().maxCoeff() <= tol;
}

Coin Coin::from_matrix(const Matrix2c &m, double tol) {
    if (!is_unitary(MatrixXc(m), tol)) {
        throw NotUnitary("coin matrix is not unitary");
    }
    return Coin(m);
}

Coin Coin::hadamard() {
    const double h = 1.0 / std::sqrt(2.0);
    Matrix2c m;
    m << h, -h, h, h;
    return Coin(m);
}

Coin Coin::reflecting() {
    Matrix2c m;
    m << 0.0, -1.0, 1.0, 0.0;
    return Coin(m);
}

Coin make_coin(Complex alpha, Complex beta, double theta) {
    if (std::abs(abs2(alpha) + abs2(beta) - 1.0) > kStateTolerance) {
        throw NormViolation("make_coin: |alpha|^2 + |beta|^2 must equal 1");
    }
    // Exact phase at theta = 0 keeps real coins real.
    const Complex phase = theta == 0.0 ? Complex(1.0, 0.0) : std::polar(1.0, theta);
    Matrix2c m;
    m << alpha, -phase * std::conj(beta), beta, phase * std::conj(alpha);
    return Coin::from_matrix(m);
}

SmallUnitary::SmallUnitary(MatrixXc m, double tol) : m_(std::move(m)) {
    if (!is_unitary(m_, tol)) throw NotUnitary("matrix is not unitary");
}

double wrap_phase(double phase) {
    constexpr double pi = std::numbers::pi;
    double w = std::remainder(phase, 2.0 * pi);  // [-pi, pi]
    if (w <= -pi) w += 2.0 * pi;
    return w;
}

std::vector<Eigenpair> eig_unitary(const SmallUnitary &u) {
    Eigen::ComplexSchur<MatrixXc> schur(u.matrix());
    if (schur.info() != Eigen::Success) throw NotUnitary("Schur decomposition did not converge");
    const MatrixXc &t = schur.matrixT();
    const MatrixXc &q = schur.matrixU();

    const auto n = u.dim();
    std::vector<Eigenpair> out;
    out.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) {
        out.push_back({wrap_phase(std::arg(t(j, j))), q.col(j)});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Eigenpair &a, const Eigenpair &b) { return a.phase < b.phase; });
    return out;
}

LineWalkState::LineWalkState(std::int64_t first, std::vector<Vector2c> amplitudes, std::int64_t time)
    : first_(first), amps_(std::move(amplitudes)), time_(time) {}

LineWalkState LineWalkState::localized(std::int64_t n0, Complex left, Complex right) {
    if (std::abs(abs2(left) + abs2(right) - 1.0) > kStateTolerance) {
        throw NormViolation("initial chirality must be normalized");
    }
    return LineWalkState(n0, {Vector2c(left, right)}, 0);
}

Vector2c LineWalkState::at(std::int64_t n) const {
    const std::int64_t i = n - first_;
    if (i < 0 || i >= static_cast<std::int64_t>(amps_.size())) return Vector2c::Zero();
    return amps_[static_cast<std::size_t>(i)];
}

double LineWalkState::norm_squared() const {
    double s = 0.0;
    for (const auto &a : amps_) s += abs2(a(0)) + abs2(a(1));
    return s;
}

void LineWalkState::trim(double threshold) {
    auto weight = [](const Vector2c &a) { return abs2(a(0)) + abs2(a(1)); };
    std::size_t lo = 0;
    while (lo < amps_.size() && weight(amps_[lo]) < threshold) ++lo;
    std::size_t hi = amps_.size();
    while (hi > lo && weight(amps_[hi - 1]) < threshold) --hi;
    amps_ = std::vector<Vector2c>(amps_.begin() + static_cast<std::ptrdiff_t>(lo),
                                  amps_.begin() + static_cast<std::ptrdiff_t>(hi));
    first_ += static_cast<std::int64_t>(lo);
}

unsigned thread_count() {
    if (const char *env = std::getenv("QWALK_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace qwalk
