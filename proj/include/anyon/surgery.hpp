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

// Closed-form evaluation of surgery loops and solid-torus boundary tensors.
// Every object here is a vector or diagonal operator over the model's charge
// basis; loops are never represented geometrically.

#include <string_view>
#include <variant>

#include "anyon/error.hpp"
#include "anyon/linalg.hpp"
#include "anyon/model.hpp"

namespace anyon {

enum class LoopBasis { longitudinal, meridional, twisted };

inline std::string_view to_string(LoopBasis b) {
    switch (b) {
        case LoopBasis::longitudinal:
            return "longitudinal";
        case LoopBasis::meridional:
            return "meridional";
        case LoopBasis::twisted:
            return "twisted";
    }
    return "?";
}

/// Operator acting diagonally on charge lines: entry c multiplies a charge-c line.
struct DiagonalLoopOperator {
    LoopBasis basis = LoopBasis::longitudinal;
    Vector entries;

    Matrix matrix() const {
        return entries.asDiagonal();
    }
};

/// Vector in the Hilbert space of a torus boundary, over the charge basis.
struct TorusVector {
    LoopBasis basis = LoopBasis::longitudinal;
    Vector coefficients;
};

struct ModularMatrices {
    Matrix S;
    Matrix T;
    /// S T^2 S^-1
    Matrix B;
};

/// Expansion coefficients of the omega_a loop over charge-x loops: S_{0a} S*_{ax}.
inline Vector omega_vector(const AnyonModel &model, Charge a) {
    const auto n = static_cast<Eigen::Index>(model.size());
    Vector out(n);
    for (Eigen::Index x = 0; x < n; ++x) {
        out(x) = model.S()(0, a.index) * std::conj(model.S()(a.index, x));
    }
    return out;
}

struct WilsonLoop {
    Charge x;
};
struct OmegaLoop {
    Charge a;
};
using Loop = std::variant<WilsonLoop, OmegaLoop>;

/// Value of `loop` encircling a charge-c line, relative to the bare line.
/// A charge-x loop gives S_{cx}/S_{0c}; an omega_a loop gives delta_{ac}.
inline cplx loop_around_line(const AnyonModel &model, const Loop &loop, Charge c) {
    const Matrix &S = model.S();
    if (const auto *w = std::get_if<WilsonLoop>(&loop)) {
        return S(c.index, w->x.index) / S(0, c.index);
    }
    const Charge a = std::get<OmegaLoop>(loop).a;
    const Vector omega = omega_vector(model, a);
    cplx sum = 0.0;
    for (Eigen::Index x = 0; x < omega.size(); ++x) {
        sum += omega(x) * S(c.index, x) / S(0, c.index);
    }
    return sum;
}

/// Sliding an omega_a loop over an omega_b loop with b abelian relabels it by
/// the unique fusion product a x b.
inline Charge slide_omega(const AnyonModel &model, Charge a, Charge b) {
    if (!model.is_abelian(b)) {
        throw NonAbelianSlide("cannot slide over omega_" + model.name(b) + ": d = " + std::to_string(model.dim(b)));
    }
    auto products = model.fusion_products(a, b);
    if (products.size() != 1) {
        throw NonAbelianSlide(model.name(a) + " x " + model.name(b) + " is not a single charge");
    }
    return products.front();
}

/// max_x |S_{a x b, x} - M_{b,x} S_{a,x}|, the algebraic content of the slide.
inline double abelian_slide_residual(const AnyonModel &model, Charge a, Charge b) {
    const Charge ab = slide_omega(model, a, b);
    double worst = 0.0;
    for (Charge x : model.charges()) {
        cplx lhs = model.S()(ab.index, x.index);
        cplx rhs = model.monodromy(b, x) * model.S()(a.index, x.index);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

/// tau^m loop: theta_c^m on each charge line threading it.
inline DiagonalLoopOperator tau_operator(const AnyonModel &model, int m) {
    Vector entries(static_cast<Eigen::Index>(model.size()));
    for (Charge c : model.charges()) {
        entries(static_cast<Eigen::Index>(c.index)) = std::pow(model.twist(c), m);
    }
    return {LoopBasis::longitudinal, entries};
}

/// S T^m S^-1
inline Matrix dehn_transform(const AnyonModel &model, int m) {
    Matrix tm = tau_operator(model, m).matrix();
    return model.S() * tm * model.S().inverse();
}

inline ModularMatrices modular_matrices(const AnyonModel &model) {
    return {model.S(), model.T(), dehn_transform(model, 2)};
}

/// The alternative spelling S^-1 T^2 S of the twisted-boundary transform.
/// Coincides with `modular_matrices().B` whenever S^2 is a permutation fixing
/// every charge (e.g. Ising).
inline Matrix conjugate_dehn_transform(const AnyonModel &model, int m = 2) {
    return model.S().inverse() * tau_operator(model, m).matrix() * model.S();
}

/// Places the vector on the diagonal and divides entry c by S_{0c}.
inline DiagonalLoopOperator vector_to_operator(const AnyonModel &model, const TorusVector &v) {
    Vector entries(v.coefficients.size());
    for (Eigen::Index c = 0; c < entries.size(); ++c) {
        entries(c) = v.coefficients(c) / model.S()(0, c);
    }
    return {v.basis, entries};
}

struct SolidTorus {
    TorusVector vector;
    DiagonalLoopOperator op;
};

/// Boundary tensor of a solid torus for the three boundary partitions:
/// longitudinal (v_l = d_a/D, identity operator), meridional (unit vector at
/// the core charge), and twisted (S T^2 S^-1 applied to the meridional vector).
inline SolidTorus solid_torus_operator(const AnyonModel &model, LoopBasis boundary, Charge core = kVacuum) {
    if (!model.contains(core)) {
        throw InvalidCore("core charge is not in the model");
    }
    const auto n = static_cast<Eigen::Index>(model.size());
    TorusVector v{boundary, Vector::Zero(n)};
    switch (boundary) {
        case LoopBasis::longitudinal:
            if (core != kVacuum) {
                throw InvalidCore("a longitudinal boundary admits only the vacuum core");
            }
            for (Eigen::Index a = 0; a < n; ++a) {
                v.coefficients(a) = model.dim(Charge{static_cast<std::size_t>(a)}) / model.total_dim();
            }
            break;
        case LoopBasis::meridional:
            v.coefficients(static_cast<Eigen::Index>(core.index)) = 1.0;
            break;
        case LoopBasis::twisted: {
            Vector meridional = Vector::Zero(n);
            meridional(static_cast<Eigen::Index>(core.index)) = 1.0;
            v.coefficients = dehn_transform(model, 2) * meridional;
            break;
        }
    }
    return {v, vector_to_operator(model, v)};
}

/// Operator realized by measuring `core` along a loop whose boundary carries
/// `total_twists` Dehn twists: S T^m S^-1 e_core, normalized by S_{0c}.
/// Only m = 2 reproduces a derived result; other values extrapolate the same
/// construction.
inline DiagonalLoopOperator twisted_operator(const AnyonModel &model, Charge core, int total_twists = 2) {
    const auto n = static_cast<Eigen::Index>(model.size());
    Vector meridional = Vector::Zero(n);
    meridional(static_cast<Eigen::Index>(core.index)) = 1.0;
    TorusVector v{LoopBasis::twisted, dehn_transform(model, total_twists) * meridional};
    return vector_to_operator(model, v);
}

}  // namespace anyon
