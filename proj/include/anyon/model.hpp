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

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "anyon/error.hpp"
#include "anyon/linalg.hpp"

namespace anyon {

/// Index of a topological charge in its model. Index 0 is always the vacuum.
struct Charge {
    std::size_t index = 0;

    friend constexpr auto operator<=>(const Charge &, const Charge &) = default;
};

inline constexpr Charge kVacuum{0};

/// Name-based description of a multiplicity-free anyon model, as read from a
/// model file. The first charge is the vacuum. F and R entries that are not
/// listed default to 1 when fusion-allowed and 0 otherwise.
struct ModelSpec {
    struct Fusion {
        std::string a, b, c;
        int multiplicity = 1;
    };
    struct FSymbol {
        std::string a, b, c, d, e, f;
        cplx value;
    };
    struct RSymbol {
        std::string a, b, c;
        cplx value;
    };
    struct Twist {
        std::string a;
        cplx value;
    };

    std::string name;
    std::vector<std::string> charges;
    std::vector<Fusion> fusion;
    std::vector<FSymbol> f_symbols;
    std::vector<RSymbol> r_symbols;
    std::vector<Twist> twists;
    /// Optional quantum dimensions; derived from F when empty.
    std::vector<std::pair<std::string, double>> dims;
    /// Optional S-matrix in charge order; derived from twists and fusion when absent.
    std::optional<Matrix> s_matrix;
};

// ---------------------------------------------------------------------------
// Consistency reports.

struct EquationInstance {
    std::string label;
    double residual = 0.0;
};

/// Residual summary for one family of axioms (pentagon, hexagon, ...).
struct FamilyReport {
    static constexpr std::size_t kMaxListed = 16;

    std::string family;
    std::size_t checked = 0;
    std::size_t failed = 0;
    double max_residual = 0.0;
    /// At most kMaxListed failing instances, in evaluation order.
    std::vector<EquationInstance> failures;

    bool passed() const {
        return failed == 0;
    }

    template <typename LabelFn>
    void record(double residual, double tol, LabelFn &&label) {
        ++checked;
        if (!(residual <= max_residual)) {
            max_residual = residual;
        }
        if (!(residual < tol)) {
            ++failed;
            if (failures.size() < kMaxListed) {
                failures.push_back({label(), residual});
            }
        }
    }
};

struct ConsistencyReport {
    double tolerance = 1e-9;
    std::vector<FamilyReport> families;

    bool passed() const {
        return std::all_of(families.begin(), families.end(), [](const FamilyReport &f) { return f.passed(); });
    }

    double max_residual() const {
        double m = 0.0;
        for (const auto &f : families) {
            m = std::max(m, f.max_residual);
        }
        return m;
    }

    const FamilyReport *find(std::string_view family) const {
        for (const auto &f : families) {
            if (f.family == family) {
                return &f;
            }
        }
        return nullptr;
    }

    std::string to_string() const {
        std::ostringstream out;
        out.precision(3);
        for (const auto &f : families) {
            out << f.family << ": " << (f.passed() ? "ok" : "FAILED") << " (" << f.checked << " checked, max residual "
                << std::scientific << f.max_residual << std::defaultfloat << ")\n";
            for (const auto &inst : f.failures) {
                out << "    " << inst.label << "  residual " << std::scientific << inst.residual << std::defaultfloat
                    << "\n";
            }
            if (f.failed > f.failures.size()) {
                out << "    ... " << (f.failed - f.failures.size()) << " more\n";
            }
        }
        return out.str();
    }
};

class ConsistencyViolation : public Error {
   public:
    explicit ConsistencyViolation(ConsistencyReport report)
        : Error("anyon model is inconsistent:\n" + report.to_string()), report_(std::move(report)) {
    }

    const ConsistencyReport &report() const {
        return report_;
    }

   private:
    ConsistencyReport report_;
};

// ---------------------------------------------------------------------------

class AnyonModel;
AnyonModel assemble_model(const ModelSpec &spec);

/// Immutable UMTC data over a fixed charge ordering.
///
/// Use `build_model` (consistency.hpp) to obtain a verified model;
/// `assemble_model` performs only the structural checks.
class AnyonModel {
   public:
    const std::string &model_name() const {
        return name_;
    }

    std::size_t size() const {
        return names_.size();
    }

    std::vector<Charge> charges() const {
        std::vector<Charge> out(size());
        for (std::size_t i = 0; i < size(); ++i) {
            out[i] = Charge{i};
        }
        return out;
    }

    bool contains(Charge a) const {
        return a.index < size();
    }

    const std::string &name(Charge a) const {
        return names_.at(a.index);
    }

    std::optional<Charge> find(std::string_view name) const {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i] == name) {
                return Charge{i};
            }
        }
        return std::nullopt;
    }

    Charge charge(std::string_view name) const {
        if (auto c = find(name)) {
            return *c;
        }
        throw UnknownCharge("unknown charge '" + std::string(name) + "' in model '" + name_ + "'");
    }

    Charge dual(Charge a) const {
        return Charge{dual_.at(a.index)};
    }

    /// N^c_{ab}
    int fusion(Charge a, Charge b, Charge c) const {
        return fusion_[(a.index * size() + b.index) * size() + c.index];
    }

    bool fuses(Charge a, Charge b, Charge c) const {
        return fusion(a, b, c) != 0;
    }

    /// All c with N^c_{ab} = 1, in charge order.
    std::vector<Charge> fusion_products(Charge a, Charge b) const {
        std::vector<Charge> out;
        for (std::size_t c = 0; c < size(); ++c) {
            if (fusion_[(a.index * size() + b.index) * size() + c]) {
                out.push_back(Charge{c});
            }
        }
        return out;
    }

    /// [F^{abc}_d]_{ef}, e in a x b, f in b x c.
    cplx F(Charge a, Charge b, Charge c, Charge d, Charge e, Charge f) const {
        std::size_t n = size();
        std::size_t k = ((((a.index * n + b.index) * n + c.index) * n + d.index) * n + e.index) * n + f.index;
        return f_[k];
    }

    /// R^{ab}_c
    cplx R(Charge a, Charge b, Charge c) const {
        return r_[(a.index * size() + b.index) * size() + c.index];
    }

    cplx twist(Charge a) const {
        return twists_.at(a.index);
    }

    double dim(Charge a) const {
        return dims_.at(a.index);
    }

    double total_dim() const {
        return total_dim_;
    }

    const Matrix &S() const {
        return s_;
    }

    /// S computed from twists, fusion and dimensions, regardless of whether an
    /// S-matrix was supplied.
    const Matrix &derived_S() const {
        return s_derived_;
    }

    bool s_supplied() const {
        return s_supplied_;
    }

    const Matrix &T() const {
        return t_;
    }

    /// M_{ab} = S_{ab} S_{00} / (S_{0a} S_{0b})
    const Matrix &monodromy_matrix() const {
        return m_;
    }

    cplx monodromy(Charge a, Charge b) const {
        return m_(a.index, b.index);
    }

    bool is_abelian(Charge a, double tol = 1e-9) const {
        return std::abs(dim(a) - 1.0) <= tol;
    }

   private:
    friend AnyonModel assemble_model(const ModelSpec &spec);

    std::string name_;
    std::vector<std::string> names_;
    std::vector<std::size_t> dual_;
    std::vector<std::uint8_t> fusion_;
    std::vector<cplx> f_;
    std::vector<cplx> r_;
    std::vector<cplx> twists_;
    std::vector<double> dims_;
    double total_dim_ = 1.0;
    Matrix s_;
    Matrix s_derived_;
    bool s_supplied_ = false;
    Matrix t_;
    Matrix m_;
};

inline cplx monodromy(const AnyonModel &model, Charge a, Charge b) {
    return model.monodromy(a, b);
}

namespace detail {

inline ConsistencyViolation structural_violation(std::string family, std::string label) {
    ConsistencyReport report;
    FamilyReport f;
    f.family = std::move(family);
    f.record(INFINITY, report.tolerance, [&] { return label; });
    report.families.push_back(std::move(f));
    return ConsistencyViolation(std::move(report));
}

}  // namespace detail

/// Builds the index-based model from a name-based spec and derives dims, D, S,
/// T and M. Performs only structural validation (vacuum, multiplicities, duals,
/// F/R entries outside the fusion rules); see `build_model` for the full check.
inline AnyonModel assemble_model(const ModelSpec &spec) {
    AnyonModel m;
    m.name_ = spec.name;
    m.names_ = spec.charges;
    const std::size_t n = m.names_.size();
    if (n == 0) {
        throw MissingVacuum("model '" + spec.name + "' has no charges; the first charge must be the vacuum");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (m.names_[i] == m.names_[j]) {
                throw ParseError("duplicate charge name '" + m.names_[i] + "'");
            }
        }
    }
    auto idx = [&](const std::string &s) { return m.charge(s).index; };

    m.fusion_.assign(n * n * n, 0);
    auto N = [&](std::size_t a, std::size_t b, std::size_t c) -> std::uint8_t & { return m.fusion_[(a * n + b) * n + c]; };
    for (std::size_t a = 0; a < n; ++a) {
        N(0, a, a) = 1;
        N(a, 0, a) = 1;
    }
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, int> listed;
    for (const auto &entry : spec.fusion) {
        std::size_t a = idx(entry.a), b = idx(entry.b), c = idx(entry.c);
        if (entry.multiplicity > 1) {
            throw NonMultiplicityFree("fusion " + entry.a + " x " + entry.b + " -> " + entry.c + " has multiplicity " +
                                      std::to_string(entry.multiplicity));
        }
        if (entry.multiplicity < 1) {
            continue;
        }
        if ((a == 0 && b != c) || (b == 0 && a != c)) {
            throw MissingVacuum("first charge '" + m.names_[0] + "' is not a fusion unit: " + entry.a + " x " +
                                entry.b + " -> " + entry.c);
        }
        if (++listed[{a, b, c}] > 1) {
            throw NonMultiplicityFree("fusion " + entry.a + " x " + entry.b + " -> " + entry.c +
                                      " listed more than once");
        }
        N(a, b, c) = 1;
        N(b, a, c) = 1;
    }

    m.dual_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        std::size_t count = 0;
        for (std::size_t b = 0; b < n; ++b) {
            if (N(a, b, 0)) {
                m.dual_[a] = b;
                ++count;
            }
        }
        if (count != 1) {
            throw detail::structural_violation(
                "fusion", "charge " + m.names_[a] + " has " + std::to_string(count) + " conjugates (expected 1)");
        }
    }

    auto f_allowed = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d, std::size_t e, std::size_t f) {
        return N(a, b, e) && N(e, c, d) && N(b, c, f) && N(a, f, d);
    };
    auto f_index = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d, std::size_t e, std::size_t f) {
        return ((((a * n + b) * n + c) * n + d) * n + e) * n + f;
    };
    m.f_.assign(n * n * n * n * n * n, cplx(0.0));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t d = 0; d < n; ++d)
                    for (std::size_t e = 0; e < n; ++e)
                        for (std::size_t f = 0; f < n; ++f)
                            if (f_allowed(a, b, c, d, e, f)) {
                                m.f_[f_index(a, b, c, d, e, f)] = 1.0;
                            }
    for (const auto &entry : spec.f_symbols) {
        std::size_t a = idx(entry.a), b = idx(entry.b), c = idx(entry.c);
        std::size_t d = idx(entry.d), e = idx(entry.e), f = idx(entry.f);
        if (!f_allowed(a, b, c, d, e, f)) {
            throw detail::structural_violation("fusion", "F[" + entry.a + "," + entry.b + "," + entry.c + ";" +
                                                             entry.d + "](" + entry.e + "," + entry.f +
                                                             ") is not allowed by the fusion rules");
        }
        m.f_[f_index(a, b, c, d, e, f)] = entry.value;
    }

    m.r_.assign(n * n * n, cplx(0.0));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (N(a, b, c)) {
                    m.r_[(a * n + b) * n + c] = 1.0;
                }
    for (const auto &entry : spec.r_symbols) {
        std::size_t a = idx(entry.a), b = idx(entry.b), c = idx(entry.c);
        if (!N(a, b, c)) {
            throw detail::structural_violation(
                "fusion", "R[" + entry.a + "," + entry.b + ";" + entry.c + "] is not allowed by the fusion rules");
        }
        m.r_[(a * n + b) * n + c] = entry.value;
    }

    m.twists_.assign(n, cplx(1.0));
    for (const auto &entry : spec.twists) {
        m.twists_[idx(entry.a)] = entry.value;
    }

    m.dims_.assign(n, 1.0);
    if (spec.dims.empty()) {
        for (std::size_t a = 0; a < n; ++a) {
            double f00 = std::abs(m.f_[f_index(a, m.dual_[a], a, a, 0, 0)]);
            m.dims_[a] = f00 > 0.0 ? 1.0 / f00 : INFINITY;
        }
    } else {
        for (const auto &[name, value] : spec.dims) {
            m.dims_[idx(name)] = value;
        }
    }
    double d2 = 0.0;
    for (double d : m.dims_) {
        d2 += d * d;
    }
    m.total_dim_ = std::sqrt(d2);

    // S_{ab} = D^{-1} sum_c N^c_{a-bar b} theta_c / (theta_a theta_b) d_c
    m.s_derived_ = Matrix::Zero(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            cplx sum = 0.0;
            for (std::size_t c = 0; c < n; ++c) {
                if (N(m.dual_[a], b, c)) {
                    sum += m.twists_[c] / (m.twists_[a] * m.twists_[b]) * m.dims_[c];
                }
            }
            m.s_derived_(a, b) = sum / m.total_dim_;
        }
    if (spec.s_matrix) {
        if (spec.s_matrix->rows() != static_cast<Eigen::Index>(n) ||
            spec.s_matrix->cols() != static_cast<Eigen::Index>(n)) {
            throw ParseError("S-matrix shape does not match the number of charges");
        }
        m.s_ = *spec.s_matrix;
        m.s_supplied_ = true;
    } else {
        m.s_ = m.s_derived_;
    }

    m.t_ = Matrix::Zero(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        m.t_(a, a) = m.twists_[a];
    }

    m.m_ = Matrix::Zero(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            m.m_(a, b) = m.s_(a, b) * m.s_(0, 0) / (m.s_(0, a) * m.s_(0, b));
        }
    return m;
}

}  // namespace anyon
