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

// Experiment configuration shared by the command-line tool.
//
// Config files are JSON objects; every field is optional:
//
//   model      "ising", "trivial" or a model file path      (default "ising")
//   probe      charge name                                   (default "sigma")
//   t1 r1 t2 r2  [re, im] beam-splitter amplitudes           (default 1/sqrt(2))
//   theta_I theta_II  path phases in radians                 (default 0)
//   twists     [l, r] full twists in the left / right arm    (default [0, 0])
//   probes     probes per trajectory N                       (default 100)
//   trials     number of trajectories                        (default 1)
//   seed       unsigned 64-bit seed                          (default 0)
//   rho00      initial qubit state diag(rho00, 1 - rho00)
//   rho        initial density matrix, [[re, im], ...] rows
//   basis      [[a, c, f], ...] labels of rho                (default Ising qubit)
//   out        output directory                              (default ".")
//
// Without rho / rho00 the initial state is |+><+| on the Ising qubit.

#include <array>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "anyon/error.hpp"
#include "anyon/interferometer.hpp"
#include "anyon/model.hpp"
#include "anyon/model_io.hpp"

namespace anyon {

/// Where a run executes: the untwisted interferometer or the twisted qubit channel.
enum class Route { untwisted, twisted };

struct RunConfig {
    std::string model = "ising";
    std::string probe = "sigma";
    cplx t1{1.0 / std::numbers::sqrt2};
    cplx r1{1.0 / std::numbers::sqrt2};
    cplx t2{1.0 / std::numbers::sqrt2};
    cplx r2{1.0 / std::numbers::sqrt2};
    double theta_I = 0.0;
    double theta_II = 0.0;
    TwistCounts twists{};
    std::size_t probes = 100;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    std::optional<Matrix> rho;
    std::vector<std::array<std::string, 3>> basis;
    std::string out = ".";
    unsigned threads = 1;

    /// Twists (0, 2) select the twisted qubit channel; (0, 0) the ordinary interferometer.
    Route route() const {
        return twists == TwistCounts{0, 2} ? Route::twisted : Route::untwisted;
    }

    /// Throws InvalidConfig / UnitarityViolation on inconsistent settings.
    void validate() const {
        if (trials < 1) {
            throw InvalidConfig("trials must be at least 1");
        }
        if (threads < 1) {
            throw InvalidConfig("threads must be at least 1");
        }
        if (!twists.untwisted() && route() != Route::twisted) {
            throw InvalidConfig("twists [" + std::to_string(twists.l) + "," + std::to_string(twists.r) +
                                "] are not supported; use [0,0] or [0,2]");
        }
        InterferometerConfig probe_free;
        probe_free.t1 = t1;
        probe_free.r1 = r1;
        probe_free.t2 = t2;
        probe_free.r2 = r2;
        probe_free.check_unitarity();
    }

    InterferometerConfig interferometer(const AnyonModel &m) const {
        InterferometerConfig c;
        c.t1 = t1;
        c.r1 = r1;
        c.t2 = t2;
        c.r2 = r2;
        c.theta_I = theta_I;
        c.theta_II = theta_II;
        c.probe = m.charge(probe);
        c.twists = twists;
        c.validate(m);
        return c;
    }

    /// Initial state over `basis` (default: the Ising qubit labels I,I;I and psi,psi;I).
    AnyonicDensityMatrix initial_state(const AnyonModel &m) const {
        std::vector<FusionLabel> labels;
        if (basis.empty()) {
            labels = {{m.charge("I"), m.charge("I"), m.charge("I")}, {m.charge("psi"), m.charge("psi"), m.charge("I")}};
        } else {
            for (const auto &[a, c, f] : basis) {
                labels.push_back({m.charge(a), m.charge(c), m.charge(f)});
            }
        }
        Matrix r;
        if (rho) {
            r = *rho;
        } else if (labels.size() == 2) {
            r = Matrix::Constant(2, 2, 0.5);
        } else {
            throw InvalidConfig("an explicit rho is required for a non-qubit basis");
        }
        AnyonicDensityMatrix state(std::move(labels), std::move(r));
        state.validate(m);
        return state;
    }
};

namespace detail {

inline std::uint64_t unsigned_field(const json &v, const std::string &key) {
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
        throw ParseError("field '" + key + "': expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

inline double number_field(const json &v, const std::string &key) {
    if (!v.is_number()) {
        throw ParseError("field '" + key + "': expected a number");
    }
    return v.get<double>();
}

}  // namespace detail

/// Applies the fields of a JSON config document on top of `base`.
inline RunConfig parse_config(const json &doc, RunConfig base = {}) {
    if (!doc.is_object()) {
        throw ParseError("config must be a JSON object");
    }
    RunConfig c = std::move(base);
    for (const auto &[key, v] : doc.items()) {
        if (key == "model" || key == "probe" || key == "out") {
            if (!v.is_string()) {
                throw ParseError("field '" + key + "': expected a string");
            }
            (key == "model" ? c.model : key == "probe" ? c.probe : c.out) = v.get<std::string>();
        } else if (key == "t1") {
            c.t1 = complex_from_json(v, key);
        } else if (key == "r1") {
            c.r1 = complex_from_json(v, key);
        } else if (key == "t2") {
            c.t2 = complex_from_json(v, key);
        } else if (key == "r2") {
            c.r2 = complex_from_json(v, key);
        } else if (key == "theta_I") {
            c.theta_I = detail::number_field(v, key);
        } else if (key == "theta_II") {
            c.theta_II = detail::number_field(v, key);
        } else if (key == "twists") {
            if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
                throw ParseError("field 'twists': expected [l, r] integers");
            }
            c.twists = {v[0].get<int>(), v[1].get<int>()};
        } else if (key == "probes") {
            c.probes = detail::unsigned_field(v, key);
        } else if (key == "trials") {
            c.trials = detail::unsigned_field(v, key);
        } else if (key == "seed") {
            c.seed = detail::unsigned_field(v, key);
        } else if (key == "threads") {
            c.threads = static_cast<unsigned>(detail::unsigned_field(v, key));
        } else if (key == "rho00") {
            double p = detail::number_field(v, key);
            Matrix r = Matrix::Zero(2, 2);
            r(0, 0) = p;
            r(1, 1) = 1.0 - p;
            c.rho = r;
        } else if (key == "rho") {
            c.rho = matrix_from_json(v, key);
        } else if (key == "basis") {
            if (!v.is_array()) {
                throw ParseError("field 'basis': expected [[a, c, f], ...]");
            }
            c.basis.clear();
            for (const auto &row : v) {
                if (!row.is_array() || row.size() != 3) {
                    throw ParseError("field 'basis': expected [[a, c, f], ...]");
                }
                std::array<std::string, 3> label;
                for (std::size_t k = 0; k < 3; ++k) {
                    label[k] = detail::name_at(row, k, "basis");
                }
                c.basis.push_back(label);
            }
        } else {
            throw ParseError("unknown config field '" + key + "'");
        }
    }
    return c;
}

inline RunConfig load_config(const std::string &path, RunConfig base = {}) {
    return parse_config(read_json_file(path), std::move(base));
}

}  // namespace anyon
