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

// JSON model files:
//
//   {
//     "name": "fibonacci",
//     "charges": ["I", "tau"],
//     "fusion":  [["tau", "tau", "I"], ["tau", "tau", "tau"]],
//     "F":       [["tau", "tau", "tau", "tau", "I", "I", 0.618, 0.0], ...],
//     "R":       [["tau", "tau", "I", -0.809, -0.588], ...],
//     "twists":  [["tau", -0.809, 0.588]],
//     "dims":    [["tau", 1.618]],                 (optional)
//     "S":       [[[re, im], ...], ...]           (optional, row-major)
//   }
//
// Fusion with the vacuum (the first charge) is implied. Unlisted F and R
// entries are 1 where fusion-allowed.

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <string>

#include "anyon/consistency.hpp"
#include "anyon/ising.hpp"
#include "anyon/model.hpp"

namespace anyon {

using json = nlohmann::json;

/// Parses JSON text; syntax errors are reported as ParseError with the line.
inline json parse_json_text(const std::string &text, const std::string &origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        std::size_t line = 1 + static_cast<std::size_t>(
                                   std::count(text.begin(), text.begin() + std::min(e.byte, text.size()), '\n'));
        throw ParseError(origin + ":" + std::to_string(line) + ": " + e.what());
    }
}

inline json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path + ": cannot open file");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_json_text(buffer.str(), path);
}

inline json to_json(cplx z) {
    return json::array({z.real(), z.imag()});
}

inline cplx complex_from_json(const json &j, const std::string &field) {
    if (j.is_number()) {
        return j.get<double>();
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError("field '" + field + "': expected a number or [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

/// Matrices serialize as row-major nested arrays of [re, im] pairs.
inline json to_json(const Matrix &m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json to_json(const Vector &v) {
    json out = json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        out.push_back(to_json(v(k)));
    }
    return out;
}

inline Matrix matrix_from_json(const json &j, const std::string &field) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        throw ParseError("field '" + field + "': expected a non-empty matrix");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols) {
            throw ParseError("field '" + field + "': ragged matrix at row " + std::to_string(r));
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = complex_from_json(j[r][c], field);
        }
    }
    return m;
}

namespace detail {

inline const json &require_array(const json &doc, const char *field, std::size_t row_size, bool required) {
    static const json empty = json::array();
    if (!doc.contains(field)) {
        if (required) {
            throw ParseError(std::string("missing field '") + field + "'");
        }
        return empty;
    }
    const json &arr = doc.at(field);
    if (!arr.is_array()) {
        throw ParseError(std::string("field '") + field + "': expected an array");
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (row_size > 0 && (!arr[i].is_array() || arr[i].size() < row_size)) {
            throw ParseError(std::string("field '") + field + "[" + std::to_string(i) + "]': expected " +
                             std::to_string(row_size) + " entries");
        }
    }
    return arr;
}

inline std::string name_at(const json &row, std::size_t k, const std::string &field) {
    if (!row[k].is_string()) {
        throw ParseError("field '" + field + "': entry " + std::to_string(k) + " must be a charge name");
    }
    return row[k].get<std::string>();
}

inline double number_at(const json &row, std::size_t k, const std::string &field) {
    if (!row[k].is_number()) {
        throw ParseError("field '" + field + "': entry " + std::to_string(k) + " must be a number");
    }
    return row[k].get<double>();
}

}  // namespace detail

inline ModelSpec model_spec_from_json(const json &doc) {
    if (!doc.is_object()) {
        throw ParseError("model document must be a JSON object");
    }
    ModelSpec spec;
    spec.name = doc.value("name", std::string("unnamed"));
    for (const auto &c : detail::require_array(doc, "charges", 0, true)) {
        if (!c.is_string()) {
            throw ParseError("field 'charges': charge names must be strings");
        }
        spec.charges.push_back(c.get<std::string>());
    }
    for (const auto &row : detail::require_array(doc, "fusion", 3, false)) {
        int mult = row.size() > 3 ? static_cast<int>(detail::number_at(row, 3, "fusion")) : 1;
        spec.fusion.push_back({detail::name_at(row, 0, "fusion"), detail::name_at(row, 1, "fusion"),
                               detail::name_at(row, 2, "fusion"), mult});
    }
    for (const auto &row : detail::require_array(doc, "F", 8, false)) {
        ModelSpec::FSymbol f;
        f.a = detail::name_at(row, 0, "F");
        f.b = detail::name_at(row, 1, "F");
        f.c = detail::name_at(row, 2, "F");
        f.d = detail::name_at(row, 3, "F");
        f.e = detail::name_at(row, 4, "F");
        f.f = detail::name_at(row, 5, "F");
        f.value = {detail::number_at(row, 6, "F"), detail::number_at(row, 7, "F")};
        spec.f_symbols.push_back(std::move(f));
    }
    for (const auto &row : detail::require_array(doc, "R", 5, false)) {
        spec.r_symbols.push_back({detail::name_at(row, 0, "R"), detail::name_at(row, 1, "R"),
                                  detail::name_at(row, 2, "R"),
                                  cplx(detail::number_at(row, 3, "R"), detail::number_at(row, 4, "R"))});
    }
    for (const auto &row : detail::require_array(doc, "twists", 3, false)) {
        spec.twists.push_back({detail::name_at(row, 0, "twists"),
                               cplx(detail::number_at(row, 1, "twists"), detail::number_at(row, 2, "twists"))});
    }
    for (const auto &row : detail::require_array(doc, "dims", 2, false)) {
        spec.dims.emplace_back(detail::name_at(row, 0, "dims"), detail::number_at(row, 1, "dims"));
    }
    if (doc.contains("S")) {
        spec.s_matrix = matrix_from_json(doc.at("S"), "S");
    }
    return spec;
}

inline json model_spec_to_json(const ModelSpec &spec) {
    json doc;
    doc["name"] = spec.name;
    doc["charges"] = spec.charges;
    doc["fusion"] = json::array();
    for (const auto &f : spec.fusion) {
        doc["fusion"].push_back({f.a, f.b, f.c});
    }
    doc["F"] = json::array();
    for (const auto &f : spec.f_symbols) {
        doc["F"].push_back({f.a, f.b, f.c, f.d, f.e, f.f, f.value.real(), f.value.imag()});
    }
    doc["R"] = json::array();
    for (const auto &r : spec.r_symbols) {
        doc["R"].push_back({r.a, r.b, r.c, r.value.real(), r.value.imag()});
    }
    doc["twists"] = json::array();
    for (const auto &t : spec.twists) {
        doc["twists"].push_back({t.a, t.value.real(), t.value.imag()});
    }
    if (!spec.dims.empty()) {
        doc["dims"] = json::array();
        for (const auto &[name, d] : spec.dims) {
            doc["dims"].push_back({name, d});
        }
    }
    if (spec.s_matrix) {
        doc["S"] = to_json(*spec.s_matrix);
    }
    return doc;
}

/// "ising" and "trivial" name built-in models; anything else is a file path.
inline ModelSpec load_model_spec(const std::string &source) {
    if (source == "ising") {
        return ising_spec();
    }
    if (source == "trivial") {
        ModelSpec spec;
        spec.name = "trivial";
        spec.charges = {"I"};
        return spec;
    }
    return model_spec_from_json(read_json_file(source));
}

}  // namespace anyon
