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
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "anyon/anyon.hpp"
#include "anyon/run_config.hpp"

namespace fs = std::filesystem;
using namespace anyon;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string &args) {
    std::string cmd = std::string(ANYONSIM_PATH) + " " + args + " 2>&1";
    CliRun r;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        return r;
    }
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) {
        r.out.append(buf, n);
    }
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("anyonsim_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override {
        fs::remove_all(dir_);
    }
    std::string out(const std::string &sub = "") const {
        return " --out " + (dir_ / sub).string();
    }
    fs::path dir_;
};

}  // namespace

TEST(RunConfigParse, Defaults) {
    RunConfig c = parse_config(json::parse(R"({"model": "ising", "probe": "sigma"})"));
    EXPECT_NEAR(std::abs(c.t1 - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(c.r2 - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_EQ(c.theta_I - c.theta_II, 0.0);
    EXPECT_EQ(c.probes, 100u);
    EXPECT_EQ(c.trials, 1u);
    EXPECT_EQ(c.seed, 0u);
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(c.route(), Route::untwisted);
}

TEST(RunConfigParse, UnitarityViolation) {
    RunConfig c = parse_config(json::parse(R"({"t1": [1, 0], "r1": [1, 0]})"));
    EXPECT_THROW(c.validate(), UnitarityViolation);
}

TEST(RunConfigParse, TwistRouting) {
    EXPECT_EQ(parse_config(json::parse(R"({"twists": [0, 2]})")).route(), Route::twisted);
    RunConfig odd = parse_config(json::parse(R"({"twists": [1, 0]})"));
    EXPECT_THROW(odd.validate(), InvalidConfig);
}

TEST(RunConfigParse, RejectsUnknownAndMistypedFields) {
    EXPECT_THROW(parse_config(json::parse(R"({"probs": 10})")), ParseError);
    EXPECT_THROW(parse_config(json::parse(R"({"trials": -1})")), ParseError);
    EXPECT_THROW(parse_config(json::parse(R"({"probe": 3})")), ParseError);
    EXPECT_THROW(parse_config(json::parse("[1, 2]")), ParseError);
    RunConfig zero = parse_config(json::parse(R"({"trials": 0})"));
    EXPECT_THROW(zero.validate(), InvalidConfig);
}

TEST(RunConfigParse, InitialStates) {
    RunConfig c = parse_config(json::parse(R"({"rho00": 0.3})"));
    auto rho = c.initial_state(ising());
    EXPECT_NEAR(rho(0, 0).real(), 0.3, 1e-15);
    EXPECT_EQ(rho(0, 1), cplx(0.0));
    RunConfig plus;
    EXPECT_NEAR(plus.initial_state(ising())(0, 1).real(), 0.5, 1e-15);
}

TEST_F(CliTest, ValidateIsing) {
    CliRun r = run("validate");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("max residual"), std::string::npos);
    EXPECT_NE(r.out.find("consistent"), std::string::npos);
}

TEST_F(CliTest, ValidateBrokenModelFails) {
    ModelSpec bad = ising_spec();
    for (auto &t : bad.twists) {
        if (t.a == "sigma") t.value = 1.0;
    }
    bad.s_matrix.reset();
    fs::path p = dir_ / "bad.json";
    std::ofstream(p) << model_spec_to_json(bad).dump();
    CliRun r = run("validate --model " + p.string());
    EXPECT_EQ(r.code, 1) << r.out;
    EXPECT_NE(r.out.find("hexagon: FAILED"), std::string::npos) << r.out;
}

TEST_F(CliTest, InterfereTransmittedFraction) {
    CliRun r = run("interfere --trials 10000 --probes 1 --rho00 0.3 --seed 9" + out());
    ASSERT_EQ(r.code, 0) << r.out;
    std::ifstream csv(dir_ / "summary.csv");
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "trial,seed,n,N,fraction,collapsed_class");
    double transmitted = 0;
    int rows = 0;
    while (std::getline(csv, line)) {
        std::stringstream ss(line);
        std::string field;
        for (int k = 0; k < 3; ++k) std::getline(ss, field, ',');
        transmitted += std::stod(field);
        ++rows;
    }
    EXPECT_EQ(rows, 10000);
    EXPECT_NEAR(transmitted / rows, 0.3, 3 * std::sqrt(0.3 * 0.7 / 10000));
    json asym = json::parse(slurp(dir_ / "asymptotic.json"));
    ASSERT_EQ(asym.size(), 2u);
    EXPECT_EQ(asym[0]["probability"].get<double>(), 0.3);
}

TEST_F(CliTest, TrajectoryRecordsMatchLibrary) {
    CliRun r = run("interfere --trials 2 --probes 5 --seed 4" + out());
    ASSERT_EQ(r.code, 0) << r.out;
    std::ifstream jl(dir_ / "trajectories.jsonl");
    std::string line;
    std::vector<json> recs;
    while (std::getline(jl, line)) recs.push_back(json::parse(line));
    ASSERT_EQ(recs.size(), 10u);

    RunConfig cfg;
    auto traj = simulate_stream(ising(), cfg.initial_state(ising()), cfg.interferometer(ising()), 5,
                                derive_seed(4, 1));
    for (std::size_t k = 0; k < 5; ++k) {
        const json &rec = recs[5 + k];
        EXPECT_EQ(rec["trial"], 1);
        EXPECT_EQ(rec["k"], k + 1);
        EXPECT_EQ(rec["s"], std::string(to_string(traj.steps[k].s)));
        EXPECT_EQ(rec["p_s"].get<double>(), traj.steps[k].p_s);
        EXPECT_EQ(rec["coherence"].get<double>(), traj.steps[k].coherence);
    }
}

TEST_F(CliTest, DeterministicAcrossRunsAndThreads) {
    const std::string args = "interfere --trials 50 --probes 20 --seed 77 --config " +
                             (fs::path(ANYON_SOURCE_DIR) / "configs/detuned.json").string();
    ASSERT_EQ(run(args + out("a")).code, 0);
    ASSERT_EQ(run(args + " --threads 4" + out("b")).code, 0);
    for (const char *f : {"trajectories.jsonl", "summary.csv", "asymptotic.json"}) {
        EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
        EXPECT_FALSE(slurp(dir_ / "a" / f).empty()) << f;
    }
}

TEST_F(CliTest, TwistedRoute) {
    CliRun r = run("interfere --twists 0,2 --rho00 1 --trials 2000" + out());
    ASSERT_EQ(r.code, 0) << r.out;
    json doc = json::parse(slurp(dir_ / "twisted.json"));
    EXPECT_EQ(doc["probability"]["I"].get<double>(),
              twisted_measure(QubitDensity{projector(QubitCharge::I)}, QubitCharge::I).probability);
    EXPECT_EQ(doc["histogram"]["I"].get<int>() + doc["histogram"]["psi"].get<int>(), 2000);
    EXPECT_NEAR(doc["magic_state_fidelity"]["psi"].get<double>(), 1.0, 1e-12);
    EXPECT_FALSE(fs::exists(dir_ / "summary.csv"));
}

TEST_F(CliTest, ProtocolTable) {
    CliRun r = run("protocol" + out());
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("diag(1, e^{-0.25 i pi})"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("diag(1, e^{-0.75 i pi})"), std::string::npos) << r.out;
    json doc = json::parse(slurp(dir_ / "protocol.json"));
    EXPECT_EQ(doc["table"].size(), 4u);
}

TEST_F(CliTest, SweepAndDump) {
    ASSERT_EQ(run("sweep --param delta --from 0 --to 3 --steps 4" + out()).code, 0);
    std::ifstream csv(dir_ / "sweep.csv");
    std::string header;
    std::getline(csv, header);
    EXPECT_EQ(header, "delta,pr_transmitted,p_I,p_sigma,p_psi");
    int rows = 0;
    for (std::string line; std::getline(csv, line);) ++rows;
    EXPECT_EQ(rows, 4);

    ASSERT_EQ(run("dump" + out()).code, 0);
    json m = json::parse(slurp(dir_ / "matrices.json"));
    EXPECT_EQ(matrix_from_json(m["B"], "B"), modular_matrices(ising()).B);
    EXPECT_EQ(m["O_t"].size(), 3u);
}

TEST_F(CliTest, ExitCodes) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("interfere --twists 1,0" + out()).code, 2);
    EXPECT_EQ(run("interfere --probe tau" + out()).code, 2);
    fs::path cfg = dir_ / "bad.json";
    std::ofstream(cfg) << R"({"t1": [1, 0], "r1": [1, 0]})";
    EXPECT_EQ(run("interfere --config " + cfg.string() + out()).code, 2);
}

TEST_F(CliTest, NumericFailureRemovesPartialOutput) {
    // t1 = 1 makes every class transmit with |r2|^2, so the asymptotic table
    // is degenerate after the trajectory files have been written.
    fs::path cfg = dir_ / "flat.json";
    std::ofstream(cfg) << R"({"t1": [1, 0], "r1": [0, 0]})";
    CliRun r = run("interfere --trials 3 --probes 3 --config " + cfg.string() + out("o"));
    EXPECT_EQ(r.code, 3) << r.out;
    EXPECT_FALSE(fs::exists(dir_ / "o" / "trajectories.jsonl"));
    EXPECT_FALSE(fs::exists(dir_ / "o" / "summary.csv"));
}
