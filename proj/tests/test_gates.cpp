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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "anyon/anyon.hpp"

using namespace anyon;

namespace {

const double kC = std::cos(kPi / 8);
const double kS = std::sin(kPi / 8);

Matrix2 random_qubit(std::mt19937_64 &gen) {
    std::normal_distribution<double> n;
    Matrix2 a;
    for (int i = 0; i < 4; ++i) {
        a.data()[i] = cplx(n(gen), n(gen));
    }
    Matrix2 rho = a * a.adjoint();
    return rho / rho.trace();
}

}  // namespace

TEST(TwistedMeasurement, ProbabilitiesOnBasisStates) {
    QubitDensity zero{projector(QubitCharge::I)};
    EXPECT_NEAR(twisted_measure(zero, QubitCharge::I).probability, 0.85355339059327373, 1e-15);
    EXPECT_NEAR(twisted_measure(zero, QubitCharge::psi).probability, kS * kS, 1e-15);
    QubitDensity one{projector(QubitCharge::psi)};
    EXPECT_NEAR(twisted_measure(one, QubitCharge::I).probability, kS * kS, 1e-15);
}

TEST(TwistedMeasurement, PostStatesMatchClosedForm) {
    std::mt19937_64 gen(2);
    for (int trial = 0; trial < 100; ++trial) {
        QubitDensity rho{random_qubit(gen)};
        const Matrix2 &r = rho.rho;
        const double pI = kC * kC * r(0, 0).real() + kS * kS * r(1, 1).real();
        Matrix2 expect_I;
        expect_I << kC * kC * r(0, 0), cplx(0, 1) * kC * kS * r(0, 1), cplx(0, -1) * kC * kS * r(1, 0),
            kS * kS * r(1, 1);
        expect_I /= pI;
        const double pP = kS * kS * r(0, 0).real() + kC * kC * r(1, 1).real();
        Matrix2 expect_P;
        expect_P << kS * kS * r(0, 0), cplx(0, -1) * kC * kS * r(0, 1), cplx(0, 1) * kC * kS * r(1, 0),
            kC * kC * r(1, 1);
        expect_P /= pP;

        TwistedResult I = twisted_measure(rho, QubitCharge::I);
        TwistedResult P = twisted_measure(rho, QubitCharge::psi);
        EXPECT_NEAR(I.probability, pI, 1e-12);
        EXPECT_NEAR(P.probability, pP, 1e-12);
        EXPECT_NEAR(I.probability + P.probability, 1.0, 1e-12);
        EXPECT_LT(max_abs_diff(I.post.rho, expect_I), 1e-12);
        EXPECT_LT(max_abs_diff(P.post.rho, expect_P), 1e-12);
    }
}

TEST(TwistedMeasurement, KrausAgreesWithClosedForm) {
    std::mt19937_64 gen(4);
    for (int trial = 0; trial < 100; ++trial) {
        QubitDensity rho{random_qubit(gen)};
        for (QubitCharge a : kQubitCharges) {
            TwistedResult closed = twisted_measure(rho, a);
            TwistedResult kraus = kraus_measure(rho, a);
            EXPECT_NEAR(closed.probability, kraus.probability, 1e-12);
            EXPECT_LT(max_abs_diff(closed.post.rho, kraus.post.rho), 1e-12);
        }
    }
}

TEST(TwistedMeasurement, PovmCompleteness) {
    Matrix2 sum = Matrix2::Zero();
    for (QubitCharge a : kQubitCharges) {
        Matrix2 k = twisted_kraus(a);
        sum += k.adjoint() * k;
    }
    EXPECT_LT(max_abs_diff(sum, Matrix2::Identity()), 1e-12);
}

TEST(TwistedMeasurement, KrausEntries) {
    const cplx w = phase(kPi / 4);
    Matrix2 k = twisted_kraus(QubitCharge::I);
    EXPECT_LT(std::abs(k(0, 0) - (1.0 + w) / 2.0), 1e-12);
    EXPECT_LT(std::abs(k(1, 1) - (1.0 - w) / 2.0), 1e-12);
}

TEST(TwistedMeasurement, ZeroProbability) {
    Matrix2 r = Matrix2::Zero();
    QubitDensity impossible{r};
    EXPECT_THROW(twisted_measure(impossible, QubitCharge::I), ZeroProbability);
}

TEST(TwistedMeasurement, SamplingFrequencies) {
    QubitDensity zero{projector(QubitCharge::I)};
    const int T = 20000;
    int n_identity = 0;
    for (int i = 0; i < T; ++i) {
        n_identity += sample_twisted(zero, derive_seed(8, static_cast<std::uint64_t>(i))).a == QubitCharge::I;
    }
    const double p = kC * kC;
    EXPECT_NEAR(static_cast<double>(n_identity) / T, p, 4 * std::sqrt(p * (1 - p) / T));
}

TEST(TwistedChannel, Framing) {
    TwistedChannel ch;
    EXPECT_TRUE(ch.derived());
    EXPECT_EQ(ch.total_twists(), 2);
    EXPECT_EQ(ch.framing(TwistCurve::gamma), 2);
    EXPECT_EQ(ch.framing(TwistCurve::gamma_bar), -2);
    EXPECT_EQ(ch.framing(TwistCurve::beta), 0);
    TwistedChannel other{{1, 1}};
    EXPECT_FALSE(other.derived());
    EXPECT_EQ(other.total_twists(), 2);
}

TEST(MagicStates, PreparedStatesHaveUnitFidelity) {
    for (QubitCharge a : kQubitCharges) {
        EXPECT_NEAR(magic_state_fidelity(a), 1.0, 1e-12);
        Vector2 v = (twisted_kraus(a) * hadamard() * Vector2(1, 0)).normalized();
        EXPECT_NEAR(fidelity(v, magic_state(a).vector()), 1.0, 1e-12);
    }
}

TEST(MagicStates, EqualsPhaseGateOnPlusUpToGlobalPhase) {
    Vector2 plus = hadamard() * Vector2(1, 0);
    Vector2 v = hadamard() * phase_gate(kPi / 4) * plus;
    EXPECT_TRUE(equal_up_to_phase(v, magic_state(QubitCharge::I).vector(), 1e-12));
    EXPECT_FALSE(equal_up_to_phase(v, magic_state(QubitCharge::psi).vector(), 1e-6));
}

TEST(Gates, BasicIdentities) {
    EXPECT_LT(max_abs_diff(Matrix2(hadamard() * hadamard()), Matrix2::Identity()), 1e-15);
    EXPECT_LT(max_abs_diff(Matrix2(hadamard() * pauli_z() * hadamard()), pauli_x()), 1e-15);
    EXPECT_LT(max_abs_diff(phase_gate(kPi), pauli_z()), 1e-15);
}

TEST(Protocol, DiagonalPairsMatchTable) {
    for (QubitCharge a : kQubitCharges) {
        ProtocolCheck c = protocol_check(a, a);
        EXPECT_LT(c.residual, 1e-12) << to_string(a);
    }
    EXPECT_LT(std::abs(protocol_check(QubitCharge::I, QubitCharge::I).ratio() - phase(-kPi / 4)), 1e-12);
    EXPECT_LT(std::abs(protocol_check(QubitCharge::psi, QubitCharge::psi).ratio() - phase(-3 * kPi / 4)), 1e-12);
}

TEST(Protocol, MixedPairsDifferByPauliZ) {
    // The evaluated formula gives diag(1, e^{i pi/4}) for (I, psi) and
    // diag(1, e^{i 3pi/4}) for (psi, I): the tabulated gates times Z.
    ProtocolCheck ip = protocol_check(QubitCharge::I, QubitCharge::psi);
    ProtocolCheck pi = protocol_check(QubitCharge::psi, QubitCharge::I);
    EXPECT_LT(std::abs(ip.ratio() - phase(kPi / 4)), 1e-12);
    EXPECT_LT(std::abs(pi.ratio() - phase(3 * kPi / 4)), 1e-12);
    EXPECT_LT(ip.residual_modulo_z, 1e-12);
    EXPECT_LT(pi.residual_modulo_z, 1e-12);
    EXPECT_GT(ip.residual, 1.0);
    EXPECT_GT(pi.residual, 1.0);
}

TEST(Protocol, OperatorsAreUnitaryUpToScale) {
    for (QubitCharge a : kQubitCharges)
        for (QubitCharge alpha : kQubitCharges) {
            ProtocolCheck c = protocol_check(a, alpha);
            EXPECT_NEAR(std::abs(c.u_identity), std::abs(c.u_psi), 1e-12);
        }
}

TEST(Protocol, SigmaSectorDecouples) {
    Matrix B = modular_matrices(ising()).B;
    EXPECT_LT(std::abs(B(1, 0)), 1e-12);
    EXPECT_LT(std::abs(B(1, 2)), 1e-12);
}
