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

// Twisted interferometry on the Ising topological qubit
// |0> = |I,I;I>, |1> = |psi,psi;I>.

#include <cmath>
#include <cstdint>
#include <string_view>

#include "anyon/error.hpp"
#include "anyon/interferometer.hpp"
#include "anyon/ising.hpp"
#include "anyon/linalg.hpp"
#include "anyon/rng.hpp"
#include "anyon/surgery.hpp"

namespace anyon {

using Matrix2 = Eigen::Matrix2cd;
using Vector2 = Eigen::Vector2cd;

/// Charge of a qubit-sector measurement: the vacuum or the fermion.
enum class QubitCharge { I = 0, psi = 1 };

inline constexpr QubitCharge kQubitCharges[] = {QubitCharge::I, QubitCharge::psi};

inline std::string_view to_string(QubitCharge a) {
    return a == QubitCharge::I ? "I" : "psi";
}

inline Charge ising_charge(QubitCharge a) {
    return a == QubitCharge::I ? ising_charges::I : ising_charges::psi;
}

inline int bit(QubitCharge a) {
    return static_cast<int>(a);
}

struct QubitState {
    cplx alpha;
    cplx beta;

    Vector2 vector() const {
        return Vector2(alpha, beta);
    }

    static QubitState from_vector(const Vector2 &v) {
        return {v(0), v(1)};
    }

    QubitState normalized() const {
        double n = std::sqrt(std::norm(alpha) + std::norm(beta));
        return {alpha / n, beta / n};
    }
};

struct QubitDensity {
    Matrix2 rho = Matrix2::Identity() / 2.0;

    static QubitDensity pure(const QubitState &psi) {
        Vector2 v = psi.normalized().vector();
        return {v * v.adjoint()};
    }

    void validate(double tol = 1e-9) const {
        if (max_abs_diff(rho, rho.adjoint()) > tol) {
            throw InvalidState("qubit density is not Hermitian");
        }
        if (std::abs(rho.trace() - 1.0) > tol) {
            throw InvalidState("qubit density trace is " + std::to_string(rho.trace().real()));
        }
        if (min_hermitian_eigenvalue(rho) < -tol) {
            throw InvalidState("qubit density is not positive semidefinite");
        }
    }
};

// ---------------------------------------------------------------------------
// Twist bookkeeping.

/// Curves whose framing picks up the arm twists: gamma / gamma-bar follow the
/// right arm, beta / beta-bar the left arm.
enum class TwistCurve { gamma, gamma_bar, beta, beta_bar };

/// Twist metadata of a twisted interferometer run. Mirror-image curves carry
/// opposite framings, so only l + r reaches the operator content.
struct TwistedChannel {
    TwistCounts twists{0, 2};

    int framing(TwistCurve curve) const {
        switch (curve) {
            case TwistCurve::gamma:
                return twists.r;
            case TwistCurve::gamma_bar:
                return -twists.r;
            case TwistCurve::beta:
                return twists.l;
            case TwistCurve::beta_bar:
                return -twists.l;
        }
        return 0;
    }

    int total_twists() const {
        return twists.l + twists.r;
    }

    /// True only for the double twist (l, r) = (0, 2) the qubit operations derive from.
    bool derived() const {
        return twists == TwistCounts{0, 2};
    }
};

// ---------------------------------------------------------------------------
// Twisted measurement.

/// K_a = O_t(a)/2 restricted to the {I, psi} block.
inline Matrix2 twisted_kraus(QubitCharge a) {
    const DiagonalLoopOperator op = twisted_operator(ising(), ising_charge(a), 2);
    Matrix2 k = Matrix2::Zero();
    k(0, 0) = op.entries(static_cast<Eigen::Index>(ising_charges::I.index)) / 2.0;
    k(1, 1) = op.entries(static_cast<Eigen::Index>(ising_charges::psi.index)) / 2.0;
    return k;
}

struct TwistedResult {
    double probability = 0.0;
    QubitDensity post;
};

/// Closed-form twisted measurement. For a = I:
///
///     Pr(I) = cos^2(pi/8) rho_00 + sin^2(pi/8) rho_11
///     rho_01 -> i cos(pi/8) sin(pi/8) rho_01 / Pr(I)
///
/// and a = psi swaps cos and sin and conjugates the off-diagonal factor.
inline TwistedResult twisted_measure(const QubitDensity &rho, QubitCharge a) {
    const double c = std::cos(kPi / 8), s = std::sin(kPi / 8);
    const double w0 = a == QubitCharge::I ? c * c : s * s;
    const double w1 = a == QubitCharge::I ? s * s : c * c;
    const cplx off = (a == QubitCharge::I ? cplx(0, 1) : cplx(0, -1)) * c * s;
    const double p = w0 * rho.rho(0, 0).real() + w1 * rho.rho(1, 1).real();
    if (p < kZeroProbability) {
        throw ZeroProbability("twisted outcome " + std::string(to_string(a)) + " has probability " +
                              std::to_string(p));
    }
    Matrix2 post;
    post(0, 0) = w0 * rho.rho(0, 0);
    post(0, 1) = off * rho.rho(0, 1);
    post(1, 0) = std::conj(off) * rho.rho(1, 0);
    post(1, 1) = w1 * rho.rho(1, 1);
    return {p, {post / p}};
}

/// Same measurement through the Kraus operators: K rho K^dagger / Pr.
inline TwistedResult kraus_measure(const QubitDensity &rho, QubitCharge a) {
    const Matrix2 k = twisted_kraus(a);
    Matrix2 out = k * rho.rho * k.adjoint();
    const double p = out.trace().real();
    if (p < kZeroProbability) {
        throw ZeroProbability("twisted outcome " + std::string(to_string(a)) + " has probability " +
                              std::to_string(p));
    }
    return {p, {out / p}};
}

struct TwistedSample {
    QubitCharge a = QubitCharge::I;
    double probability = 0.0;
    QubitDensity post;
};

/// Draws the twisted outcome: a = I iff CounterRng(seed).uniform() < Pr(I).
inline TwistedSample sample_twisted(const QubitDensity &rho, std::uint64_t seed) {
    CounterRng rng(seed);
    const double c = std::cos(kPi / 8), s = std::sin(kPi / 8);
    const double p_identity = c * c * rho.rho(0, 0).real() + s * s * rho.rho(1, 1).real();
    const QubitCharge a = rng.uniform() < p_identity ? QubitCharge::I : QubitCharge::psi;
    TwistedResult r = twisted_measure(rho, a);
    return {a, r.probability, r.post};
}

/// a = I: cos(pi/8)|0> - i sin(pi/8)|1>;  a = psi: sin(pi/8)|0> + i cos(pi/8)|1>.
inline QubitState magic_state(QubitCharge a) {
    const double c = std::cos(kPi / 8), s = std::sin(kPi / 8);
    if (a == QubitCharge::I) {
        return {c, cplx(0, -s)};
    }
    return {s, cplx(0, c)};
}

/// normalize(O_t(a) H|0>), the state prepared by a twisted measurement of |+>.
inline QubitState prepared_magic_state(QubitCharge a) {
    const DiagonalLoopOperator op = twisted_operator(ising(), ising_charge(a), 2);
    const double h = 1.0 / std::sqrt(2.0);
    QubitState out{op.entries(static_cast<Eigen::Index>(ising_charges::I.index)) * h,
                   op.entries(static_cast<Eigen::Index>(ising_charges::psi.index)) * h};
    return out.normalized();
}

/// Fidelity between the prepared state and magic_state(a).
inline double magic_state_fidelity(QubitCharge a) {
    return fidelity(prepared_magic_state(a).vector(), magic_state(a).vector());
}

// ---------------------------------------------------------------------------
// Single-qubit gates.

inline Matrix2 hadamard() {
    Matrix2 h;
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

/// R_theta = diag(1, e^{i theta})
inline Matrix2 phase_gate(double theta) {
    Matrix2 r = Matrix2::Identity();
    r(1, 1) = phase(theta);
    return r;
}

inline Matrix2 pauli_x() {
    Matrix2 x;
    x << 0, 1, 1, 0;
    return x;
}

inline Matrix2 pauli_z() {
    Matrix2 z;
    z << 1, 0, 0, -1;
    return z;
}

/// Untwisted charge projector: Pi_0 for I, Pi_1 for psi.
inline Matrix2 projector(QubitCharge a) {
    Matrix2 p = Matrix2::Zero();
    p(bit(a), bit(a)) = 1.0;
    return p;
}

// ---------------------------------------------------------------------------
// Direct phase-gate protocol.

/// U(a, alpha) up to global phase: diag(1, e^{-i pi/4}) for alpha = I and
/// diag(1, e^{-i 3 pi/4}) for alpha = psi, independent of a.
inline Matrix2 protocol_unitary(QubitCharge /*a*/, QubitCharge alpha) {
    return phase_gate(alpha == QubitCharge::I ? -kPi / 4 : -3 * kPi / 4);
}

/// Twisted-interferometry coefficient C_{a,z}: cos(pi/8) when a = z, i sin(pi/8) otherwise.
inline cplx twisted_coefficient(QubitCharge a, QubitCharge z) {
    return a == z ? cplx(std::cos(kPi / 8)) : cplx(0, std::sin(kPi / 8));
}

struct ProtocolCheck {
    QubitCharge a;
    QubitCharge alpha;
    /// Diagonal amplitudes u_q, q in {I, psi}.
    cplx u_identity;
    cplx u_psi;
    /// diag(u_I, u_psi); off-diagonal entries vanish by charge conservation.
    Matrix2 op;
    /// max entrywise distance to protocol_unitary(a, alpha) after global-phase removal.
    double residual = 0.0;
    /// The same distance after an extra Pauli Z on the evaluated operator.
    double residual_modulo_z = 0.0;

    cplx ratio() const {
        return u_psi / u_identity;
    }
};

/// Evaluates
///
///     u_q = sum_z C_{a,z} (-1)^{zq + z alpha + z + alpha q} e^{i pi/8} R^{alpha sigma}_sigma / R^{sigma sigma}_q
///
/// with I -> 0, psi -> 1 in the exponent and Ising R-symbols.
inline ProtocolCheck protocol_check(QubitCharge a, QubitCharge alpha) {
    const AnyonModel &model = ising();
    const Charge sigma = ising_charges::sigma;
    cplx u[2];
    for (QubitCharge q : kQubitCharges) {
        cplx sum = 0.0;
        for (QubitCharge z : kQubitCharges) {
            int exponent = bit(z) * bit(q) + bit(z) * bit(alpha) + bit(z) + bit(alpha) * bit(q);
            sum += twisted_coefficient(a, z) * (exponent % 2 == 0 ? 1.0 : -1.0);
        }
        u[bit(q)] = sum * phase(kPi / 8) * model.R(ising_charge(alpha), sigma, sigma) /
                    model.R(sigma, sigma, ising_charge(q));
    }
    ProtocolCheck out{a, alpha, u[0], u[1], Matrix2::Zero()};
    out.op(0, 0) = u[0];
    out.op(1, 1) = u[1];
    const Matrix2 expected = protocol_unitary(a, alpha);
    out.residual = max_abs_diff(canonical_phase(out.op), canonical_phase(expected));
    out.residual_modulo_z = max_abs_diff(canonical_phase(Matrix2(pauli_z() * out.op)), canonical_phase(expected));
    return out;
}

}  // namespace anyon
