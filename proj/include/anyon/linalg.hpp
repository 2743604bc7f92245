// Copyright 2026 The Anyonic Interferometry Authors
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

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace anyon {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;

/// e^{i phi}
inline cplx phase(double phi) {
    return std::polar(1.0, phi);
}

template <typename A, typename B>
double max_abs_diff(const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return INFINITY;
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

/// Rotates the global phase so that the first entry (column-major order) with
/// modulus above `tol` is real and positive. Zero inputs are returned as is.
template <typename Derived>
typename Derived::PlainObject canonical_phase(const Eigen::MatrixBase<Derived> &m, double tol = 1e-12) {
    typename Derived::PlainObject out = m;
    for (Eigen::Index k = 0; k < out.size(); ++k) {
        cplx z = out.data()[k];
        if (std::abs(z) > tol) {
            out *= std::conj(z) / std::abs(z);
            break;
        }
    }
    return out;
}

/// Entrywise comparison after both sides are brought to canonical phase.
template <typename A, typename B>
bool equal_up_to_phase(const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b, double tol) {
    return max_abs_diff(canonical_phase(a.eval(), tol), canonical_phase(b.eval(), tol)) <= tol;
}

/// |<a|b>|^2 / (<a|a><b|b>)
template <typename A, typename B>
double fidelity(const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b) {
    double na = a.squaredNorm();
    double nb = b.squaredNorm();
    return std::norm(a.dot(b)) / (na * nb);
}

/// Smallest eigenvalue of the Hermitian part of `m`.
inline double min_hermitian_eigenvalue(const Matrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Matrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

}  // namespace anyon
