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

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "anyon/error.hpp"
#include "anyon/linalg.hpp"
#include "anyon/model.hpp"
#include "anyon/rng.hpp"

namespace anyon {

/// Entries below this modulus are treated as structurally zero when deciding
/// which connecting charges a density matrix actually uses.
inline constexpr double kNegligible = 1e-14;
inline constexpr double kZeroProbability = 1e-12;
inline constexpr double kDegenerateTuning = 1e-9;
inline constexpr double kMonodromyTolerance = 1e-9;

/// Full twists (l, r) in the left and right interferometer arms.
struct TwistCounts {
    int l = 0;
    int r = 0;

    bool untwisted() const {
        return l == 0 && r == 0;
    }
    friend bool operator==(const TwistCounts &, const TwistCounts &) = default;
};

/// Mach-Zehnder interferometer: beam splitters T_j = [[t_j, r_j*], [r_j, -t_j*]],
/// path phases theta_I / theta_II and probe charge b.
struct InterferometerConfig {
    cplx t1{1.0 / std::numbers::sqrt2};
    cplx r1{1.0 / std::numbers::sqrt2};
    cplx t2{1.0 / std::numbers::sqrt2};
    cplx r2{1.0 / std::numbers::sqrt2};
    double theta_I = 0.0;
    double theta_II = 0.0;
    Charge probe{};
    TwistCounts twists{};

    /// t_j = r_j = 1/sqrt(2), theta_I - theta_II = delta.
    static InterferometerConfig symmetric(Charge probe, double delta = 0.0) {
        InterferometerConfig c;
        c.probe = probe;
        c.theta_I = delta;
        return c;
    }

    double delta() const {
        return theta_I - theta_II;
    }

    /// Throws UnitarityViolation unless |t_j|^2 + |r_j|^2 = 1 within `tol`.
    void check_unitarity(double tol = 1e-9) const {
        for (int j = 1; j <= 2; ++j) {
            double norm = j == 1 ? std::norm(t1) + std::norm(r1) : std::norm(t2) + std::norm(r2);
            if (std::abs(norm - 1.0) > tol) {
                throw UnitarityViolation("beam splitter " + std::to_string(j) + ": |t|^2 + |r|^2 = " +
                                         std::to_string(norm) + ", expected 1");
            }
        }
    }

    void validate(const AnyonModel &model) const {
        check_unitarity();
        if (!model.contains(probe)) {
            throw UnknownCharge("probe charge index " + std::to_string(probe.index) + " is not in the model");
        }
    }
};

enum class ProbeOutcome { transmitted, reflected };

inline constexpr ProbeOutcome kProbeOutcomes[] = {ProbeOutcome::transmitted, ProbeOutcome::reflected};

inline std::string_view to_string(ProbeOutcome s) {
    return s == ProbeOutcome::transmitted ? "transmitted" : "reflected";
}

/// Basis label |a, c; f> of a target (A) / complement (C) pair with total charge f.
struct FusionLabel {
    Charge a;
    Charge c;
    Charge f;

    friend bool operator==(const FusionLabel &, const FusionLabel &) = default;
};

/// Density matrix of the target + complement system over labeled fusion-tree
/// basis states. Entries may only couple labels with the same total charge.
class AnyonicDensityMatrix {
   public:
    AnyonicDensityMatrix() = default;

    AnyonicDensityMatrix(std::vector<FusionLabel> basis, Matrix rho) : basis_(std::move(basis)), rho_(std::move(rho)) {
        if (rho_.rows() != static_cast<Eigen::Index>(basis_.size()) || rho_.cols() != rho_.rows()) {
            throw InvalidState("density matrix shape does not match its basis");
        }
    }

    const std::vector<FusionLabel> &basis() const {
        return basis_;
    }
    const Matrix &matrix() const {
        return rho_;
    }
    std::size_t size() const {
        return basis_.size();
    }
    const FusionLabel &label(std::size_t i) const {
        return basis_[i];
    }
    cplx operator()(std::size_t i, std::size_t j) const {
        return rho_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    double trace() const {
        return rho_.trace().real();
    }

    /// Throws InvalidState unless the matrix is Hermitian, unit-trace, positive
    /// semidefinite, fusion-allowed and charge-superselected (all within `tol`).
    void validate(const AnyonModel &model, double tol = 1e-9) const {
        for (const auto &l : basis_) {
            if (!model.contains(l.a) || !model.contains(l.c) || !model.contains(l.f)) {
                throw InvalidState("basis label refers to a charge outside the model");
            }
            if (!model.fuses(l.a, l.c, l.f)) {
                throw InvalidState("basis label (" + model.name(l.a) + "," + model.name(l.c) + ";" + model.name(l.f) +
                                   ") is not fusion-allowed");
            }
        }
        if (max_abs_diff(rho_, rho_.adjoint()) > tol) {
            throw InvalidState("density matrix is not Hermitian");
        }
        if (std::abs(rho_.trace() - 1.0) > tol) {
            throw InvalidState("density matrix trace is " + std::to_string(rho_.trace().real()));
        }
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j) {
                if (basis_[i].f != basis_[j].f && std::abs((*this)(i, j)) > tol) {
                    throw InvalidState("density matrix couples different total charges");
                }
            }
        if (min_hermitian_eigenvalue(rho_) < -tol) {
            throw InvalidState("density matrix is not positive semidefinite");
        }
    }

   private:
    std::vector<FusionLabel> basis_;
    Matrix rho_;
};

/// Ising qubit in the basis |0> = |I,I;I>, |1> = |psi,psi;I>.
inline AnyonicDensityMatrix ising_qubit_density(const Eigen::Matrix2cd &rho) {
    const Charge I{0}, psi{2};
    return AnyonicDensityMatrix({{I, I, I}, {psi, psi, I}}, Matrix(rho));
}

/// Ratio of the largest off-diagonal modulus to the largest diagonal entry.
inline double coherence(const AnyonicDensityMatrix &rho) {
    double off = 0.0, diag = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        diag = std::max(diag, std::abs(rho(i, i)));
        for (std::size_t j = 0; j < rho.size(); ++j) {
            if (i != j) {
                off = std::max(off, std::abs(rho(i, j)));
            }
        }
    }
    return diag > 0.0 ? off / diag : 0.0;
}

/// Charges e that can connect the A-sides and C-sides of |i><j|:
/// e in a x a'-bar and e in c' x c-bar.
inline std::vector<Charge> connecting_charges(const AnyonModel &model, const FusionLabel &i, const FusionLabel &j) {
    std::vector<Charge> out;
    for (Charge e : model.fusion_products(i.a, model.dual(j.a))) {
        if (model.fuses(j.c, model.dual(i.c), e)) {
            out.push_back(e);
        }
    }
    return out;
}

/// p^s_{a a' e, b}: the factor multiplying the |a..><a'..| component with
/// connecting charge e after a probe b exits towards detector s.
inline cplx p_factor(const AnyonModel &model, Charge a, Charge a_prime, Charge e, const InterferometerConfig &config,
                     ProbeOutcome s) {
    if (!model.fuses(a, model.dual(a_prime), e)) {
        throw ForbiddenConnectingCharge("connecting charge " + model.name(e) + " is not in " + model.name(a) + " x " +
                                        model.name(model.dual(a_prime)));
    }
    const Charge b = config.probe;
    const cplx t1 = config.t1, r1 = config.r1, t2 = config.t2, r2 = config.r2;
    const cplx forward = t1 * std::conj(r1) * std::conj(r2) * std::conj(t2) * phase(config.delta()) *
                         model.monodromy(a, b);
    const cplx backward = std::conj(t1) * r1 * t2 * r2 * phase(-config.delta()) * std::conj(model.monodromy(a_prime, b));
    if (s == ProbeOutcome::transmitted) {
        return std::norm(t1) * std::norm(r2) * model.monodromy(e, b) + forward + backward +
               std::norm(r1) * std::norm(t2);
    }
    return std::norm(t1) * std::norm(t2) * model.monodromy(e, b) - forward - backward + std::norm(r1) * std::norm(r2);
}

struct ProbeResult {
    double probability = 0.0;
    AnyonicDensityMatrix post;
};

/// Single-probe measurement superoperator for a fixed basis and configuration.
/// Each density-matrix entry is multiplied by the p-factor of its connecting
/// charge, which must be unique wherever the entry is nonzero.
class ProbeChannel {
   public:
    ProbeChannel(const AnyonModel &model, std::vector<FusionLabel> basis, const InterferometerConfig &config)
        : basis_(std::move(basis)) {
        config.validate(model);
        if (!config.twists.untwisted()) {
            throw InvalidConfig("the untwisted interferometer requires twists (0, 0)");
        }
        const auto n = static_cast<Eigen::Index>(basis_.size());
        for (int k = 0; k < 2; ++k) {
            factors_[k] = Matrix::Zero(n, n);
            diagonal_[k] = Eigen::VectorXd::Zero(n);
        }
        ambiguous_.assign(basis_.size() * basis_.size(), false);
        forbidden_.assign(basis_.size() * basis_.size(), false);
        for (Eigen::Index i = 0; i < n; ++i) {
            const FusionLabel &li = basis_[i];
            for (int k = 0; k < 2; ++k) {
                diagonal_[k](i) = p_factor(model, li.a, li.a, kVacuum, config, kProbeOutcomes[k]).real();
            }
            for (Eigen::Index j = 0; j < n; ++j) {
                const FusionLabel &lj = basis_[j];
                auto es = connecting_charges(model, li, lj);
                std::size_t flat = static_cast<std::size_t>(i) * basis_.size() + static_cast<std::size_t>(j);
                if (es.empty()) {
                    forbidden_[flat] = true;
                    continue;
                }
                if (es.size() > 1) {
                    ambiguous_[flat] = true;
                    continue;
                }
                for (int k = 0; k < 2; ++k) {
                    factors_[k](i, j) = p_factor(model, li.a, lj.a, es.front(), config, kProbeOutcomes[k]);
                }
            }
        }
    }

    const std::vector<FusionLabel> &basis() const {
        return basis_;
    }

    /// Pr(s) = sum over diagonal entries of rho times p^s_{a a vacuum}.
    double probability(const AnyonicDensityMatrix &rho, ProbeOutcome s) const {
        check_basis(rho);
        const auto &d = diagonal_[index(s)];
        double p = 0.0;
        for (Eigen::Index i = 0; i < d.size(); ++i) {
            p += rho.matrix()(i, i).real() * d(i);
        }
        return p;
    }

    /// Outcome probability and conditioned state. Throws ZeroProbability when
    /// Pr(s) < 1e-12.
    ProbeResult condition(const AnyonicDensityMatrix &rho, ProbeOutcome s) const {
        double p = probability(rho, s);
        if (p < kZeroProbability) {
            throw ZeroProbability("probe outcome " + std::string(to_string(s)) + " has probability " +
                                  std::to_string(p));
        }
        Matrix post = unnormalized(rho, s) / p;
        return {p, AnyonicDensityMatrix(basis_, std::move(post))};
    }

    /// sum_s Pr(s) rho(s), the channel with the outcome discarded.
    AnyonicDensityMatrix average(const AnyonicDensityMatrix &rho) const {
        Matrix out = unnormalized(rho, ProbeOutcome::transmitted) + unnormalized(rho, ProbeOutcome::reflected);
        return AnyonicDensityMatrix(basis_, std::move(out));
    }

    /// p^s factor applied to entry (i, j); zero where no connecting charge exists.
    const Matrix &factors(ProbeOutcome s) const {
        return factors_[index(s)];
    }

   private:
    static int index(ProbeOutcome s) {
        return s == ProbeOutcome::transmitted ? 0 : 1;
    }

    void check_basis(const AnyonicDensityMatrix &rho) const {
        if (rho.basis() != basis_) {
            throw InvalidState("density matrix basis does not match the probe channel");
        }
    }

    Matrix unnormalized(const AnyonicDensityMatrix &rho, ProbeOutcome s) const {
        check_basis(rho);
        const std::size_t n = basis_.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (std::abs(rho(i, j)) <= kNegligible) {
                    continue;
                }
                if (ambiguous_[i * n + j]) {
                    throw UnsupportedBasisChange(
                        "density matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                        ") has more than one connecting charge; the general F-move is not supported");
                }
                if (forbidden_[i * n + j]) {
                    throw InvalidState("density matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                                       ") has no allowed connecting charge");
                }
            }
        return rho.matrix().cwiseProduct(factors_[index(s)]);
    }

    std::vector<FusionLabel> basis_;
    Matrix factors_[2];
    Eigen::VectorXd diagonal_[2];
    std::vector<bool> ambiguous_;
    std::vector<bool> forbidden_;
};

inline ProbeResult apply_probe(const AnyonModel &model, const AnyonicDensityMatrix &rho,
                               const InterferometerConfig &config, ProbeOutcome s) {
    return ProbeChannel(model, rho.basis(), config).condition(rho, s);
}

inline double outcome_probability(const AnyonModel &model, const AnyonicDensityMatrix &rho,
                                  const InterferometerConfig &config, ProbeOutcome s) {
    return ProbeChannel(model, rho.basis(), config).probability(rho, s);
}

// ---------------------------------------------------------------------------
// Probe streams.

struct ProbeStep {
    std::size_t k = 0;  // 1-based probe index
    ProbeOutcome s = ProbeOutcome::transmitted;
    double p_s = 0.0;        // conditional probability of s given the previous outcomes
    double coherence = 0.0;  // coherence of the state after this probe
};

struct ProbeTrajectory {
    std::uint64_t seed = 0;
    std::vector<ProbeOutcome> outcomes;
    std::vector<ProbeStep> steps;
    /// Conditioned states after each probe; only filled when requested.
    std::vector<AnyonicDensityMatrix> states;
    AnyonicDensityMatrix final_state;
    std::size_t n_transmitted = 0;

    std::size_t probes() const {
        return outcomes.size();
    }
    double fraction() const {
        return outcomes.empty() ? 0.0 : static_cast<double>(n_transmitted) / static_cast<double>(outcomes.size());
    }
};

/// Sends N probes through the interferometer. Probe k draws u_k from
/// CounterRng(seed) and exits at -> iff u_k < Pr(-> | previous outcomes).
inline ProbeTrajectory simulate_stream(const AnyonModel &model, const AnyonicDensityMatrix &rho,
                                       const InterferometerConfig &config, std::size_t N, std::uint64_t seed,
                                       bool retain_states = false) {
    ProbeChannel channel(model, rho.basis(), config);
    CounterRng rng(seed);
    ProbeTrajectory traj;
    traj.seed = seed;
    traj.outcomes.reserve(N);
    traj.steps.reserve(N);
    AnyonicDensityMatrix state = rho;
    for (std::size_t k = 1; k <= N; ++k) {
        double p_forward = channel.probability(state, ProbeOutcome::transmitted);
        ProbeOutcome s = rng.uniform() < p_forward ? ProbeOutcome::transmitted : ProbeOutcome::reflected;
        ProbeResult step = channel.condition(state, s);
        state = std::move(step.post);
        traj.outcomes.push_back(s);
        traj.steps.push_back({k, s, step.probability, coherence(state)});
        if (s == ProbeOutcome::transmitted) {
            ++traj.n_transmitted;
        }
        if (retain_states) {
            traj.states.push_back(state);
        }
    }
    traj.final_state = std::move(state);
    return traj;
}

// ---------------------------------------------------------------------------
// Equivalence classes and asymptotics.

/// Charges the probe cannot tell apart (equal monodromy with the probe).
struct ChargeClass {
    Charge probe;
    std::vector<Charge> members;
    cplx monodromy;
    /// Single-probe transmission probability p_kappa of every member.
    double p_transmit = 0.0;

    bool contains(Charge a) const {
        return std::find(members.begin(), members.end(), a) != members.end();
    }
};

struct EquivalenceClasses {
    Charge probe;
    std::vector<ChargeClass> classes;

    std::size_t index_of(Charge a) const {
        for (std::size_t k = 0; k < classes.size(); ++k) {
            if (classes[k].contains(a)) {
                return k;
            }
        }
        throw UnknownCharge("charge index " + std::to_string(a.index) + " belongs to no class");
    }
};

/// Partitions the charges by M_{a,b} (within 1e-9), in order of first member.
inline EquivalenceClasses equivalence_classes(const AnyonModel &model, Charge b, const InterferometerConfig &config) {
    InterferometerConfig probe_config = config;
    probe_config.probe = b;
    probe_config.validate(model);
    EquivalenceClasses out{b, {}};
    for (Charge a : model.charges()) {
        cplx m = model.monodromy(a, b);
        auto it = std::find_if(out.classes.begin(), out.classes.end(),
                               [&](const ChargeClass &k) { return std::abs(k.monodromy - m) <= kMonodromyTolerance; });
        if (it != out.classes.end()) {
            it->members.push_back(a);
            continue;
        }
        double p = p_factor(model, a, a, kVacuum, probe_config, ProbeOutcome::transmitted).real();
        out.classes.push_back({b, {a}, m, p});
    }
    return out;
}

/// Pr_A(kappa) for every class: the diagonal weight with A-charge in the class.
inline std::vector<double> class_weights(const AnyonicDensityMatrix &rho, const EquivalenceClasses &classes) {
    std::vector<double> w(classes.classes.size(), 0.0);
    for (std::size_t i = 0; i < rho.size(); ++i) {
        w[classes.index_of(rho.label(i).a)] += rho(i, i).real();
    }
    return w;
}

inline double binomial_pmf(std::size_t N, std::size_t n, double p) {
    if (p <= 0.0) {
        return n == 0 ? 1.0 : 0.0;
    }
    if (p >= 1.0) {
        return n == N ? 1.0 : 0.0;
    }
    double log_choose = std::lgamma(N + 1.0) - std::lgamma(n + 1.0) - std::lgamma(N - n + 1.0);
    return std::exp(log_choose + n * std::log(p) + (N - n) * std::log1p(-p));
}

/// Pr_N(n) = sum_kappa Pr_A(kappa) C(N,n) p_kappa^n (1 - p_kappa)^(N-n), n = 0..N.
inline std::vector<double> outcome_distribution(const AnyonModel &model, const AnyonicDensityMatrix &rho,
                                                const InterferometerConfig &config, std::size_t N) {
    auto classes = equivalence_classes(model, config.probe, config);
    auto weights = class_weights(rho, classes);
    std::vector<double> dist(N + 1, 0.0);
    for (std::size_t k = 0; k < classes.classes.size(); ++k) {
        if (weights[k] == 0.0) {
            continue;
        }
        for (std::size_t n = 0; n <= N; ++n) {
            dist[n] += weights[k] * binomial_pmf(N, n, classes.classes[k].p_transmit);
        }
    }
    return dist;
}

/// Projects rho onto A-charges in `kappa`, renormalizes, and removes every
/// component whose connecting charge e has M_{e,b} != 1.
inline AnyonicDensityMatrix fixed_state(const AnyonModel &model, const AnyonicDensityMatrix &rho,
                                        const ChargeClass &kappa) {
    const std::size_t n = rho.size();
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    double weight = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (kappa.contains(rho.label(i).a)) {
            weight += rho(i, i).real();
        }
    }
    if (weight < kZeroProbability) {
        throw ZeroProbability("density matrix has no weight in the requested charge class");
    }
    auto detectable = [&](Charge e) {
        return std::abs(model.monodromy(e, kappa.probe) - 1.0) > kMonodromyTolerance;
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (!kappa.contains(rho.label(i).a)) {
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (!kappa.contains(rho.label(j).a) || std::abs(rho(i, j)) <= kNegligible) {
                continue;
            }
            auto es = connecting_charges(model, rho.label(i), rho.label(j));
            bool any_detectable = std::any_of(es.begin(), es.end(), detectable);
            if (es.size() > 1 && any_detectable) {
                throw UnsupportedBasisChange("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                             ") mixes connecting charges with different monodromy");
            }
            if (!es.empty() && !any_detectable) {
                out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rho(i, j) / weight;
            }
        }
    }
    return AnyonicDensityMatrix(rho.basis(), std::move(out));
}

struct AsymptoticBranch {
    ChargeClass kappa;
    double probability = 0.0;
    AnyonicDensityMatrix state;
};

/// N -> infinity limit: one branch per populated class, with probability
/// Pr_A(kappa) and the corresponding fixed state. Throws DegenerateTuning when
/// two populated classes share p_kappa (within 1e-9).
inline std::vector<AsymptoticBranch> asymptotic_measure(const AnyonModel &model, const AnyonicDensityMatrix &rho,
                                                        const InterferometerConfig &config) {
    auto classes = equivalence_classes(model, config.probe, config);
    auto weights = class_weights(rho, classes);
    std::vector<AsymptoticBranch> out;
    for (std::size_t k = 0; k < classes.classes.size(); ++k) {
        if (weights[k] <= kZeroProbability) {
            continue;
        }
        for (const auto &other : out) {
            if (std::abs(other.kappa.p_transmit - classes.classes[k].p_transmit) < kDegenerateTuning) {
                throw DegenerateTuning("charge classes share transmission probability " +
                                       std::to_string(other.kappa.p_transmit) +
                                       "; interferometer tuning cannot distinguish them");
            }
        }
        out.push_back({classes.classes[k], weights[k], fixed_state(model, rho, classes.classes[k])});
    }
    return out;
}

}  // namespace anyon
