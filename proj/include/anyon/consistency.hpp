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

#include <string>
#include <vector>

#include "anyon/model.hpp"

namespace anyon {

namespace detail {

inline std::string label_of(const AnyonModel &m, std::initializer_list<Charge> cs) {
    std::string out;
    for (Charge c : cs) {
        if (!out.empty()) {
            out += ",";
        }
        out += m.name(c);
    }
    return out;
}

inline FamilyReport check_fusion(const AnyonModel &m, double tol) {
    FamilyReport rep;
    rep.family = "fusion";
    const auto cs = m.charges();
    for (Charge a : cs) {
        for (Charge c : cs) {
            double r = std::abs(m.fusion(kVacuum, a, c) - (a == c ? 1 : 0));
            rep.record(r, tol, [&] { return "N^" + m.name(c) + "_{vacuum," + m.name(a) + "} unit"; });
        }
        double r = std::abs(m.fusion(a, m.dual(a), kVacuum) - 1);
        rep.record(r, tol, [&] { return m.name(a) + " x dual contains vacuum once"; });
    }
    for (Charge a : cs)
        for (Charge b : cs)
            for (Charge c : cs) {
                double r = std::abs(m.fusion(a, b, c) - m.fusion(b, a, c));
                rep.record(r, tol, [&] { return "commutativity N(" + label_of(m, {a, b, c}) + ")"; });
                for (Charge d : cs) {
                    int lhs = 0, rhs = 0;
                    for (Charge e : cs) {
                        lhs += m.fusion(a, b, e) * m.fusion(e, c, d);
                        rhs += m.fusion(b, c, e) * m.fusion(a, e, d);
                    }
                    rep.record(std::abs(lhs - rhs), tol,
                               [&] { return "associativity (" + label_of(m, {a, b, c, d}) + ")"; });
                }
            }
    return rep;
}

// [F^{fcd}_e]_{gl} [F^{abl}_e]_{fk} = sum_h [F^{abc}_g]_{fh} [F^{ahd}_e]_{gk} [F^{bcd}_k]_{hl}
inline FamilyReport check_pentagon(const AnyonModel &m, double tol) {
    FamilyReport rep;
    rep.family = "pentagon";
    const auto cs = m.charges();
    for (Charge a : cs)
        for (Charge b : cs)
            for (Charge c : cs)
                for (Charge d : cs)
                    for (Charge e : cs)
                        for (Charge f : m.fusion_products(a, b))
                            for (Charge g : m.fusion_products(f, c)) {
                                if (!m.fuses(g, d, e)) {
                                    continue;
                                }
                                for (Charge l : m.fusion_products(c, d))
                                    for (Charge k : m.fusion_products(b, l)) {
                                        if (!m.fuses(a, k, e)) {
                                            continue;
                                        }
                                        cplx lhs = m.F(f, c, d, e, g, l) * m.F(a, b, l, e, f, k);
                                        cplx rhs = 0.0;
                                        for (Charge h : cs) {
                                            rhs += m.F(a, b, c, g, f, h) * m.F(a, h, d, e, g, k) * m.F(b, c, d, k, h, l);
                                        }
                                        rep.record(std::abs(lhs - rhs), tol, [&] {
                                            return "pentagon a,b,c,d,e=" + label_of(m, {a, b, c, d, e}) +
                                                   " f,g,k,l=" + label_of(m, {f, g, k, l});
                                        });
                                    }
                            }
    return rep;
}

// R^{ca}_e [F^{acb}_d]_{eg} R^{cb}_g = sum_f [F^{cab}_d]_{ef} R^{cf}_d [F^{abc}_d]_{fg}, the
// same with R replaced by the inverse braiding, and the balancing relation
// R^{ab}_c R^{ba}_c = theta_c / (theta_a theta_b).
inline FamilyReport check_hexagon(const AnyonModel &m, double tol) {
    FamilyReport rep;
    rep.family = "hexagon";
    const auto cs = m.charges();
    auto inv = [](cplx z) { return z == cplx(0.0) ? cplx(0.0) : 1.0 / z; };
    for (Charge a : cs)
        for (Charge b : cs)
            for (Charge c : cs)
                for (Charge d : cs)
                    for (Charge e : m.fusion_products(a, c))
                        for (Charge g : m.fusion_products(c, b)) {
                            if (!m.fuses(e, b, d) || !m.fuses(a, g, d)) {
                                continue;
                            }
                            cplx lhs = m.R(c, a, e) * m.F(a, c, b, d, e, g) * m.R(c, b, g);
                            cplx lhs_inv = inv(m.R(a, c, e)) * m.F(a, c, b, d, e, g) * inv(m.R(b, c, g));
                            cplx rhs = 0.0, rhs_inv = 0.0;
                            for (Charge f : cs) {
                                rhs += m.F(c, a, b, d, e, f) * m.R(c, f, d) * m.F(a, b, c, d, f, g);
                                rhs_inv += m.F(c, a, b, d, e, f) * inv(m.R(f, c, d)) * m.F(a, b, c, d, f, g);
                            }
                            auto label = [&] { return "(" + label_of(m, {a, b, c, d}) + ") e,g=" + label_of(m, {e, g}); };
                            rep.record(std::abs(lhs - rhs), tol, [&] { return "hexagon " + label(); });
                            rep.record(std::abs(lhs_inv - rhs_inv), tol, [&] { return "inverse hexagon " + label(); });
                        }
    for (Charge a : cs)
        for (Charge b : cs)
            for (Charge c : m.fusion_products(a, b)) {
                cplx expect = m.twist(c) / (m.twist(a) * m.twist(b));
                rep.record(std::abs(m.R(a, b, c) * m.R(b, a, c) - expect), tol,
                           [&] { return "balancing R^{ab}_c R^{ba}_c (" + label_of(m, {a, b, c}) + ")"; });
            }
    return rep;
}

inline FamilyReport check_s_matrix(const AnyonModel &m, double tol) {
    FamilyReport rep;
    rep.family = "s_matrix";
    const std::size_t n = m.size();
    const Matrix &S = m.S();
    Matrix unit = S * S.adjoint();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c) {
            double r = std::abs(unit(a, c) - (a == c ? 1.0 : 0.0));
            rep.record(r, tol, [&] { return "unitarity (" + label_of(m, {Charge{a}, Charge{c}}) + ")"; });
            rep.record(std::abs(S(a, c) - S(c, a)), tol,
                       [&] { return "symmetry (" + label_of(m, {Charge{a}, Charge{c}}) + ")"; });
            if (m.s_supplied()) {
                rep.record(std::abs(S(a, c) - m.derived_S()(a, c)), tol, [&] {
                    return "supplied vs derived S (" + label_of(m, {Charge{a}, Charge{c}}) + ")";
                });
            }
        }
    for (std::size_t a = 0; a < n; ++a) {
        double r = std::abs(S(0, a) - m.dim(Charge{a}) / m.total_dim());
        rep.record(r, tol, [&] { return "S_{0," + m.name(Charge{a}) + "} = d/D"; });
    }
    return rep;
}

inline FamilyReport check_monodromy(const AnyonModel &m, double tol) {
    FamilyReport rep;
    rep.family = "monodromy";
    const Matrix &S = m.S();
    for (Charge a : m.charges())
        for (Charge b : m.charges()) {
            cplx from_s = S(a.index, b.index) * S(0, 0) / (S(0, a.index) * S(0, b.index));
            rep.record(std::abs(m.monodromy(a, b) - from_s), tol,
                       [&] { return "M from S (" + label_of(m, {a, b}) + ")"; });
            rep.record(std::abs(m.monodromy(a, b) - m.monodromy(b, a)), tol,
                       [&] { return "M symmetric (" + label_of(m, {a, b}) + ")"; });
            // Ribbon form, matching the S convention used by assemble_model.
            Charge abar = m.dual(a);
            cplx from_r = 0.0;
            for (Charge c : m.fusion_products(abar, b)) {
                from_r += m.dim(c) / (m.dim(a) * m.dim(b)) * m.R(b, abar, c) * m.R(abar, b, c);
            }
            rep.record(std::abs(m.monodromy(a, b) - from_r), tol,
                       [&] { return "M from R (" + label_of(m, {a, b}) + ")"; });
        }
    return rep;
}

inline FamilyReport check_twist_vacuum(const AnyonModel &m, double tol) {
    FamilyReport rep;
    rep.family = "twist_vacuum";
    rep.record(std::abs(m.twist(kVacuum) - 1.0), tol, [] { return std::string("theta_vacuum = 1"); });
    rep.record(std::abs(m.dim(kVacuum) - 1.0), tol, [] { return std::string("d_vacuum = 1"); });
    for (Charge a : m.charges()) {
        rep.record(std::abs(std::abs(m.twist(a)) - 1.0), tol, [&] { return "|theta_" + m.name(a) + "| = 1"; });
        cplx from_r = 0.0;
        for (Charge c : m.fusion_products(a, a)) {
            from_r += m.dim(c) / m.dim(a) * m.R(a, a, c);
        }
        rep.record(std::abs(m.twist(a) - from_r), tol,
                   [&] { return "theta_" + m.name(a) + " = sum_c d_c/d_a R^{aa}_c"; });
    }
    return rep;
}

inline FamilyReport check_dimensions(const AnyonModel &m, double tol) {
    FamilyReport rep;
    rep.family = "dimensions";
    const std::size_t n = m.size();
    double d2 = 0.0;
    for (Charge a : m.charges()) {
        d2 += m.dim(a) * m.dim(a);
        rep.record(std::abs(m.dim(a) - (m.S()(0, a.index) / m.S()(0, 0)).real()) +
                       std::abs((m.S()(0, a.index) / m.S()(0, 0)).imag()),
                   tol, [&] { return "d_" + m.name(a) + " = S_{0a}/S_{00}"; });
        Eigen::MatrixXd fusion_matrix(n, n);
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                fusion_matrix(b, c) = m.fusion(a, Charge{b}, Charge{c});
            }
        double perron = fusion_matrix.eigenvalues().cwiseAbs().maxCoeff();
        rep.record(std::abs(m.dim(a) - perron), tol,
                   [&] { return "d_" + m.name(a) + " = Perron-Frobenius eigenvalue of N_a"; });
    }
    rep.record(std::abs(m.total_dim() * m.total_dim() - d2), tol, [] { return std::string("D^2 = sum d^2"); });
    return rep;
}

}  // namespace detail

/// Evaluates every axiom instance of the model and reports the maximum residual
/// per family. The model is consistent iff every residual is below `tol`.
inline ConsistencyReport verify_consistency(const AnyonModel &model, double tol = 1e-9) {
    ConsistencyReport report;
    report.tolerance = tol;
    report.families.push_back(detail::check_fusion(model, tol));
    report.families.push_back(detail::check_pentagon(model, tol));
    report.families.push_back(detail::check_hexagon(model, tol));
    report.families.push_back(detail::check_s_matrix(model, tol));
    report.families.push_back(detail::check_monodromy(model, tol));
    report.families.push_back(detail::check_twist_vacuum(model, tol));
    report.families.push_back(detail::check_dimensions(model, tol));
    return report;
}

/// Assembles and verifies a model. Throws ConsistencyViolation carrying the
/// full report when any axiom fails at `tol`.
inline AnyonModel build_model(const ModelSpec &spec, double tol = 1e-9) {
    AnyonModel model = assemble_model(spec);
    ConsistencyReport report = verify_consistency(model, tol);
    if (!report.passed()) {
        throw ConsistencyViolation(std::move(report));
    }
    return model;
}

}  // namespace anyon
