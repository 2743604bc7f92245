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

#include "anyon/consistency.hpp"
#include "anyon/model.hpp"

namespace anyon {

namespace ising_charges {
inline constexpr Charge I{0};
inline constexpr Charge sigma{1};
inline constexpr Charge psi{2};
}  // namespace ising_charges

/// Ising fusion, F and R data with theta_sigma = e^{i pi/8}, charge order
/// (I, sigma, psi). Unlisted F and R entries are trivial.
inline ModelSpec ising_spec() {
    const double r = 1.0 / std::sqrt(2.0);
    ModelSpec spec;
    spec.name = "ising";
    spec.charges = {"I", "sigma", "psi"};
    spec.fusion = {
        {"sigma", "sigma", "I"},
        {"sigma", "sigma", "psi"},
        {"sigma", "psi", "sigma"},
        {"psi", "psi", "I"},
    };
    spec.f_symbols = {
        {"sigma", "sigma", "sigma", "sigma", "I", "I", r},
        {"sigma", "sigma", "sigma", "sigma", "I", "psi", r},
        {"sigma", "sigma", "sigma", "sigma", "psi", "I", r},
        {"sigma", "sigma", "sigma", "sigma", "psi", "psi", -r},
        {"sigma", "psi", "sigma", "psi", "sigma", "sigma", -1.0},
        {"psi", "sigma", "psi", "sigma", "sigma", "sigma", -1.0},
    };
    spec.r_symbols = {
        {"sigma", "sigma", "I", phase(-kPi / 8)},
        {"sigma", "sigma", "psi", phase(3 * kPi / 8)},
        {"sigma", "psi", "sigma", phase(-kPi / 2)},
        {"psi", "sigma", "sigma", phase(-kPi / 2)},
        {"psi", "psi", "I", -1.0},
    };
    spec.twists = {
        {"I", 1.0},
        {"sigma", phase(kPi / 8)},
        {"psi", -1.0},
    };
    Matrix s(3, 3);
    const double h = std::sqrt(2.0) / 2.0;
    s << 0.5, h, 0.5,  //
        h, 0.0, -h,    //
        0.5, -h, 0.5;
    spec.s_matrix = s;
    return spec;
}

/// The built-in Ising model (verified on construction).
inline const AnyonModel &ising() {
    static const AnyonModel model = build_model(ising_spec());
    return model;
}

/// Trivial theory with only the vacuum.
inline AnyonModel trivial_model() {
    ModelSpec spec;
    spec.name = "trivial";
    spec.charges = {"I"};
    return build_model(spec);
}

}  // namespace anyon
