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
#include <complex>
#include <map>
#include <set>
#include <string>
#include <tuple>

#include "anyon/anyon.hpp"

using namespace anyon;
using ising_charges::I;
using ising_charges::psi;
using ising_charges::sigma;

namespace {

const double kRoot2 = std::sqrt(2.0);

// Independent evaluation of the pentagon and hexagon equations straight from
// a ModelSpec, keyed by charge names. Shares no code with AnyonModel.
struct SpecOracle {
    std::vector<std::string> names;
    std::set<std::tuple<std::string, std::string, std::string>> fusion;
    std::map<std::vector<std::string>, cplx> F, R;

    explicit SpecOracle(const ModelSpec &spec) : names(spec.charges) {
        const std::string &vac = names.front();
        for (const auto &n : names) {
            fusion.insert({vac, n, n});
            fusion.insert({n, vac, n});
        }
        for (const auto &f : spec.fusion) {
            fusion.insert({f.a, f.b, f.c});
            fusion.insert({f.b, f.a, f.c});
        }
        for (const auto &f : spec.f_symbols) {
            F[{f.a, f.b, f.c, f.d, f.e, f.f}] = f.value;
        }
        for (const auto &r : spec.r_symbols) {
            R[{r.a, r.b, r.c}] = r.value;
        }
    }

    bool ok(const std::string &a, const std::string &b, const std::string &c) const {
        return fusion.count({a, b, c}) > 0;
    }

    cplx f(const std::string &a, const std::string &b, const std::string &c, const std::string &d, const std::string &e,
           const std::string &g) const {
        if (!ok(a, b, e) || !ok(e, c, d) || !ok(b, c, g) || !ok(a, g, d)) {
            return 0.0;
        }
        auto it = F.find({a, b, c, d, e, g});
        return it == F.end() ? cplx(1.0) : it->second;
    }

    cplx r(const std::string &a, const std::string &b, const std::string &c) const {
        if (!ok(a, b, c)) {
            return 0.0;
        }
        auto it = R.find({a, b, c});
        return it == R.end() ? cplx(1.0) : it->second;
    }

    double pentagon() const {
        double worst = 0.0;
        for (auto &a : names)
            for (auto &b : names)
                for (auto &c : names)
                    for (auto &d : names)
                        for (auto &e : names)
                            for (auto &fv : names)
                                for (auto &g : names)
                                    for (auto &k : names)
                                        for (auto &l : names) {
                                            cplx lhs = f(fv, c, d, e, g, l) * f(a, b, l, e, fv, k);
                                            cplx rhs = 0.0;
                                            for (auto &h : names) {
                                                rhs += f(a, b, c, g, fv, h) * f(a, h, d, e, g, k) * f(b, c, d, k, h, l);
                                            }
                                            worst = std::max(worst, std::abs(lhs - rhs));
                                        }
        return worst;
    }

    double hexagon() const {
        double worst = 0.0;
        for (auto &a : names)
            for (auto &b : names)
                for (auto &c : names)
                    for (auto &d : names)
                        for (auto &e : names)
                            for (auto &g : names) {
                                cplx lhs = r(c, a, e) * f(a, c, b, d, e, g) * r(c, b, g);
                                cplx rhs = 0.0;
                                for (auto &h : names) {
                                    rhs += f(c, a, b, d, e, h) * r(c, h, d) * f(a, b, c, d, h, g);
                                }
                                worst = std::max(worst, std::abs(lhs - rhs));
                            }
        return worst;
    }
};

ModelSpec with_f(ModelSpec spec, const std::string &e, const std::string &f, cplx value) {
    for (auto &entry : spec.f_symbols) {
        if (entry.a == "sigma" && entry.b == "sigma" && entry.c == "sigma" && entry.d == "sigma" && entry.e == e &&
            entry.f == f) {
            entry.value = value;
            return spec;
        }
    }
    spec.f_symbols.push_back({"sigma", "sigma", "sigma", "sigma", e, f, value});
    return spec;
}

std::string repo_file(const std::string &rel) {
    return std::string(ANYON_SOURCE_DIR) + "/" + rel;
}

}  // namespace

TEST(IsingModel, QuantumDimensionsAndTotalDimension) {
    const AnyonModel &m = ising();
    EXPECT_NEAR(m.dim(I), 1.0, 1e-12);
    EXPECT_NEAR(m.dim(sigma), kRoot2, 1e-12);
    EXPECT_NEAR(m.dim(psi), 1.0, 1e-12);
    EXPECT_NEAR(m.total_dim(), 2.0, 1e-12);
}

TEST(IsingModel, SMatrixMatchesTable) {
    Matrix expected(3, 3);
    expected << 1, kRoot2, 1, kRoot2, 0, -kRoot2, 1, -kRoot2, 1;
    expected /= 2.0;
    EXPECT_LT(max_abs_diff(ising().S(), expected), 1e-12);
    EXPECT_LT(max_abs_diff(ising().derived_S(), expected), 1e-12);
}

TEST(IsingModel, MonodromyMatchesTable) {
    Matrix expected(3, 3);
    expected << 1, 1, 1, 1, 0, -1, 1, -1, 1;
    EXPECT_LT(max_abs_diff(ising().monodromy_matrix(), expected), 1e-12);
    EXPECT_NEAR(std::abs(monodromy(ising(), sigma, psi) + 1.0), 0.0, 1e-12);
}

TEST(IsingModel, TwistsAndT) {
    const AnyonModel &m = ising();
    EXPECT_LT(std::abs(m.twist(sigma) - phase(kPi / 8)), 1e-15);
    EXPECT_LT(std::abs(m.twist(psi) + 1.0), 1e-15);
    Matrix T = Matrix::Zero(3, 3);
    T(0, 0) = 1.0;
    T(1, 1) = phase(2 * kPi / 16);
    T(2, 2) = -1.0;
    EXPECT_LT(max_abs_diff(m.T(), T), 1e-15);
}

TEST(IsingModel, FusionRules) {
    const AnyonModel &m = ising();
    EXPECT_EQ(m.fusion_products(sigma, sigma), (std::vector<Charge>{I, psi}));
    EXPECT_EQ(m.fusion_products(sigma, psi), (std::vector<Charge>{sigma}));
    EXPECT_EQ(m.fusion_products(psi, psi), (std::vector<Charge>{I}));
    for (Charge a : m.charges()) {
        EXPECT_EQ(m.dual(a), a);
    }
}

TEST(IsingModel, AllFamiliesPassBelowAcceptanceTolerance) {
    ConsistencyReport rep = verify_consistency(ising(), 1e-12);
    EXPECT_TRUE(rep.passed()) << rep.to_string();
    for (const char *family : {"fusion", "pentagon", "hexagon", "s_matrix", "monodromy", "twist_vacuum", "dimensions"}) {
        ASSERT_NE(rep.find(family), nullptr) << family;
        EXPECT_GT(rep.find(family)->checked, 0u) << family;
    }
}

TEST(IsingModel, OracleAgreesThatIsingIsConsistent) {
    SpecOracle oracle(ising_spec());
    EXPECT_LT(oracle.pentagon(), 1e-12);
    EXPECT_LT(oracle.hexagon(), 1e-12);
}

TEST(ConsistencyChecker, FlippedFSymbolViolatesPentagon) {
    ModelSpec bad = with_f(ising_spec(), "psi", "psi", 1.0 / kRoot2);
    SpecOracle oracle(bad);
    ASSERT_GT(oracle.pentagon(), 1e-3);

    AnyonModel m = assemble_model(bad);
    ConsistencyReport rep = verify_consistency(m);
    EXPECT_FALSE(rep.passed());
    ASSERT_NE(rep.find("pentagon"), nullptr);
    EXPECT_FALSE(rep.find("pentagon")->passed());
    EXPECT_NEAR(rep.find("pentagon")->max_residual, oracle.pentagon(), 1e-9);
    EXPECT_FALSE(rep.find("pentagon")->failures.empty());

    try {
        build_model(bad);
        FAIL() << "expected ConsistencyViolation";
    } catch (const ConsistencyViolation &e) {
        EXPECT_FALSE(e.report().find("pentagon")->passed());
    }
}

TEST(ConsistencyChecker, WrongSigmaTwistViolatesHexagonFamily) {
    ModelSpec bad = ising_spec();
    for (auto &t : bad.twists) {
        if (t.a == "sigma") {
            t.value = 1.0;
        }
    }
    bad.s_matrix.reset();
    ConsistencyReport rep = verify_consistency(assemble_model(bad));
    ASSERT_NE(rep.find("hexagon"), nullptr);
    EXPECT_FALSE(rep.find("hexagon")->passed());
    EXPECT_TRUE(rep.find("pentagon")->passed());
}

TEST(ConsistencyChecker, TrivialModel) {
    AnyonModel m = trivial_model();
    EXPECT_EQ(m.size(), 1u);
    EXPECT_TRUE(verify_consistency(m, 1e-15).passed());
    EXPECT_LT(std::abs(m.S()(0, 0) - 1.0), 1e-15);
}

TEST(ConsistencyChecker, ToleranceIsRespected) {
    ModelSpec slightly_off = with_f(ising_spec(), "I", "I", 1.0 / kRoot2 + 1e-7);
    AnyonModel m = assemble_model(slightly_off);
    EXPECT_FALSE(verify_consistency(m, 1e-9).passed());
    EXPECT_TRUE(verify_consistency(m, 1e-5).passed());
}

TEST(ModelAssembly, EmptyChargeListIsMissingVacuum) {
    ModelSpec spec;
    spec.name = "empty";
    EXPECT_THROW(assemble_model(spec), MissingVacuum);
}

TEST(ModelAssembly, FirstChargeMustActAsUnit) {
    ModelSpec spec;
    spec.name = "no-unit";
    spec.charges = {"x", "y"};
    spec.fusion = {{"x", "y", "x"}};
    EXPECT_THROW(assemble_model(spec), MissingVacuum);
}

TEST(ModelAssembly, MultiplicityRejected) {
    ModelSpec spec;
    spec.name = "mult";
    spec.charges = {"I", "t"};
    spec.fusion = {{"t", "t", "I"}, {"t", "t", "t", 2}};
    EXPECT_THROW(assemble_model(spec), NonMultiplicityFree);
}

TEST(ModelAssembly, UnknownChargeName) {
    EXPECT_THROW(ising().charge("tau"), UnknownCharge);
    EXPECT_EQ(ising().charge("psi"), psi);
}

TEST(ModelFiles, ShippedModelsVerify) {
    for (const char *name : {"models/fibonacci.json", "models/semion.json", "models/toric_code.json"}) {
        ModelSpec spec = load_model_spec(repo_file(name));
        SpecOracle oracle(spec);
        EXPECT_LT(oracle.pentagon(), 1e-12) << name;
        EXPECT_LT(oracle.hexagon(), 1e-12) << name;
        ConsistencyReport rep = verify_consistency(assemble_model(spec), 1e-12);
        EXPECT_TRUE(rep.passed()) << name << "\n" << rep.to_string();
    }
}

TEST(ModelFiles, FibonacciDimensionIsGoldenRatio) {
    AnyonModel m = build_model(load_model_spec(repo_file("models/fibonacci.json")));
    EXPECT_NEAR(m.dim(m.charge("tau")), (1.0 + std::sqrt(5.0)) / 2.0, 1e-12);
}

TEST(ModelFiles, IsingRoundTripsThroughJson) {
    ModelSpec spec = model_spec_from_json(model_spec_to_json(ising_spec()));
    AnyonModel m = build_model(spec);
    EXPECT_LT(max_abs_diff(m.S(), ising().S()), 1e-15);
    EXPECT_LT(max_abs_diff(m.monodromy_matrix(), ising().monodromy_matrix()), 1e-15);
}

TEST(ModelFiles, ParseErrorCarriesLine) {
    try {
        parse_json_text("{\n  \"charges\": [\"I\",\n  oops\n}", "broken.json");
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_NE(std::string(e.what()).find("broken.json:3"), std::string::npos) << e.what();
    }
}

TEST(ModelFiles, BuiltinNames) {
    EXPECT_EQ(load_model_spec("ising").charges.size(), 3u);
    EXPECT_EQ(load_model_spec("trivial").charges.size(), 1u);
    EXPECT_THROW(load_model_spec("/no/such/model.json"), ParseError);
}
