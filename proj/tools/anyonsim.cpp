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

// anyonsim: command-line front end for the anyon library.
//
//   anyonsim validate  [--model M]
//   anyonsim interfere [--config F] [--probes N] [--trials T] [--seed S] [--out DIR]
//   anyonsim twisted   [--trials T] [--seed S] [--out DIR]
//   anyonsim protocol  [--out DIR]
//   anyonsim sweep     --param theta_I|theta_II|delta|rho00 --from A --to B --steps K
//   anyonsim dump      [--model M] [--out DIR]
//
// Exit codes: 0 success, 1 validation failure, 2 usage error, 3 numeric error.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "anyon/anyon.hpp"
#include "anyon/run_config.hpp"

namespace fs = std::filesystem;
using namespace anyon;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

/// Files written by the current command; removed again if the command fails.
class Outputs {
   public:
    explicit Outputs(std::string dir) : dir_(std::move(dir)) {}

    std::ofstream open(const std::string &name) {
        fs::create_directories(dir_);
        fs::path p = fs::path(dir_) / name;
        written_.push_back(p);
        std::ofstream out(p, std::ios::binary);
        if (!out) {
            throw InvalidConfig("cannot write " + p.string());
        }
        out << std::setprecision(17);
        return out;
    }

    void write_json(const std::string &name, const json &doc) {
        std::ofstream out = open(name);
        out << doc.dump(2) << "\n";
    }

    void discard() {
        for (const auto &p : written_) {
            std::error_code ec;
            fs::remove(p, ec);
        }
        written_.clear();
    }

   private:
    std::string dir_;
    std::vector<fs::path> written_;
};

std::string class_name(const AnyonModel &model, const ChargeClass &k) {
    std::string out;
    for (Charge c : k.members) {
        out += (out.empty() ? "" : "|") + model.name(c);
    }
    return out;
}

json charge_names(const AnyonModel &model, const ChargeClass &k) {
    json out = json::array();
    for (Charge c : k.members) {
        out.push_back(model.name(c));
    }
    return out;
}

/// Runs fn(i) for i in [0, n) on `threads` workers. Results must be written to
/// per-index slots so the outcome does not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

AnyonModel load_model(const RunConfig &cfg) {
    return build_model(load_model_spec(cfg.model));
}

QubitDensity qubit_density(const AnyonicDensityMatrix &state) {
    if (state.size() != 2) {
        throw InvalidConfig("the twisted channel acts on the two-state Ising qubit");
    }
    return {Matrix2(state.matrix())};
}

// ---------------------------------------------------------------------------
// Subcommands.

int run_validate(const RunConfig &cfg) {
    AnyonModel model = assemble_model(load_model_spec(cfg.model));
    ConsistencyReport report = verify_consistency(model);
    std::cout << "model: " << model.model_name() << "\n" << report.to_string();
    std::cout << std::setprecision(3) << "max residual: " << report.max_residual() << "\n";
    std::cout << (report.passed() ? "consistent" : "INCONSISTENT") << "\n";
    return report.passed() ? kExitOk : kExitValidation;
}

int run_twisted(const RunConfig &cfg, Outputs &out) {
    const AnyonModel &model = ising();
    const QubitDensity rho = qubit_density(cfg.initial_state(model));
    rho.validate();

    std::vector<TwistedSample> samples(cfg.trials);
    parallel_for(cfg.trials, cfg.threads,
                 [&](std::size_t i) { samples[i] = sample_twisted(rho, derive_seed(cfg.seed, i)); });

    json doc;
    doc["twists"] = {cfg.twists.l, cfg.twists.r};
    doc["trials"] = cfg.trials;
    doc["seed"] = cfg.seed;
    json hist = json::object(), prob = json::object(), post = json::object(), magic = json::object();
    for (QubitCharge a : kQubitCharges) {
        std::size_t n = 0;
        for (const auto &s : samples) {
            n += s.a == a ? 1 : 0;
        }
        const std::string name(to_string(a));
        hist[name] = n;
        try {
            TwistedResult r = twisted_measure(rho, a);
            prob[name] = r.probability;
            post[name] = to_json(Matrix(r.post.rho));
        } catch (const ZeroProbability &) {
            prob[name] = 0.0;
            post[name] = nullptr;
        }
        magic[name] = magic_state_fidelity(a);
    }
    doc["histogram"] = hist;
    doc["probability"] = prob;
    doc["post_state"] = post;
    doc["magic_state_fidelity"] = magic;
    out.write_json("twisted.json", doc);

    std::cout << "outcome  count  probability  magic-fidelity\n" << std::setprecision(12);
    for (QubitCharge a : kQubitCharges) {
        const std::string name(to_string(a));
        std::cout << std::left << std::setw(9) << name << std::setw(7) << hist[name].get<std::size_t>()
                  << std::setw(13) << prob[name].get<double>() << "  " << magic[name].get<double>() << "\n";
    }
    return kExitOk;
}

int run_interfere(const RunConfig &cfg, Outputs &out) {
    if (cfg.route() == Route::twisted) {
        return run_twisted(cfg, out);
    }
    const AnyonModel model = load_model(cfg);
    const InterferometerConfig icfg = cfg.interferometer(model);
    const AnyonicDensityMatrix rho = cfg.initial_state(model);
    const EquivalenceClasses classes = equivalence_classes(model, icfg.probe, icfg);

    std::vector<ProbeTrajectory> trajectories(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) {
        trajectories[i] = simulate_stream(model, rho, icfg, cfg.probes, derive_seed(cfg.seed, i));
    });

    {
        std::ofstream jl = out.open("trajectories.jsonl");
        for (std::size_t i = 0; i < trajectories.size(); ++i) {
            for (const ProbeStep &step : trajectories[i].steps) {
                json rec = {{"trial", i},
                            {"k", step.k},
                            {"s", std::string(to_string(step.s))},
                            {"p_s", step.p_s},
                            {"coherence", step.coherence}};
                jl << rec.dump() << "\n";
            }
        }
    }
    {
        std::ofstream csv = out.open("summary.csv");
        csv << "trial,seed,n,N,fraction,collapsed_class\n";
        for (std::size_t i = 0; i < trajectories.size(); ++i) {
            const ProbeTrajectory &t = trajectories[i];
            std::vector<double> w = class_weights(t.final_state, classes);
            std::size_t best = static_cast<std::size_t>(std::max_element(w.begin(), w.end()) - w.begin());
            csv << i << "," << t.seed << "," << t.n_transmitted << "," << t.probes() << "," << t.fraction() << ","
                << class_name(model, classes.classes[best]) << "\n";
        }
    }

    std::vector<AsymptoticBranch> branches = asymptotic_measure(model, rho, icfg);
    json asym = json::array();
    std::cout << "class        p_transmit         probability\n" << std::setprecision(15);
    for (const AsymptoticBranch &b : branches) {
        asym.push_back({{"class", charge_names(model, b.kappa)},
                        {"p_transmit", b.kappa.p_transmit},
                        {"probability", b.probability},
                        {"state", to_json(b.state.matrix())}});
        std::cout << std::left << std::setw(13) << class_name(model, b.kappa) << std::setw(19) << b.kappa.p_transmit << "  "
                  << b.probability << "\n";
    }
    out.write_json("asymptotic.json", asym);
    return kExitOk;
}

int run_protocol(Outputs &out) {
    json table = json::array();
    std::cout << "a    alpha  U(a,alpha)              residual   residual_mod_Z\n";
    for (QubitCharge a : kQubitCharges) {
        for (QubitCharge alpha : kQubitCharges) {
            ProtocolCheck c = protocol_check(a, alpha);
            table.push_back({{"a", std::string(to_string(a))},
                             {"alpha", std::string(to_string(alpha))},
                             {"U", to_json(Matrix(protocol_unitary(a, alpha)))},
                             {"evaluated", to_json(Matrix(c.op))},
                             {"residual", c.residual},
                             {"residual_modulo_z", c.residual_modulo_z}});
            const double angle = std::arg(protocol_unitary(a, alpha)(1, 1)) / kPi;
            std::cout << std::left << std::setw(5) << to_string(a) << std::setw(7) << to_string(alpha)
                      << "diag(1, e^{" << std::setprecision(4) << angle << " i pi})" << std::setw(4) << ""
                      << std::setprecision(3) << std::setw(11) << c.residual << "  " << c.residual_modulo_z << "\n";
        }
    }
    const Matrix B = modular_matrices(ising()).B;
    json doc = {{"table", table},
                {"B_sigma_I", to_json(B(ising_charges::sigma.index, ising_charges::I.index))},
                {"B_sigma_psi", to_json(B(ising_charges::sigma.index, ising_charges::psi.index))}};
    out.write_json("protocol.json", doc);
    return kExitOk;
}

int run_sweep(RunConfig cfg, const std::string &param, double from, double to, std::size_t steps, Outputs &out) {
    if (steps < 1) {
        throw InvalidConfig("--steps must be at least 1");
    }
    if (param != "theta_I" && param != "theta_II" && param != "delta" && param != "rho00") {
        throw InvalidConfig("unknown sweep parameter '" + param + "' (theta_I, theta_II, delta, rho00)");
    }
    const bool twisted = cfg.route() == Route::twisted;
    const AnyonModel model = twisted ? ising() : load_model(cfg);
    std::ofstream csv = out.open("sweep.csv");
    bool header = false;
    for (std::size_t k = 0; k < steps; ++k) {
        const double value = steps == 1 ? from : from + (to - from) * static_cast<double>(k) / (steps - 1);
        if (param == "theta_I") {
            cfg.theta_I = value;
        } else if (param == "theta_II") {
            cfg.theta_II = value;
        } else if (param == "delta") {
            cfg.theta_I = value;
            cfg.theta_II = 0.0;
        } else {
            Matrix r = Matrix::Zero(2, 2);
            r(0, 0) = value;
            r(1, 1) = 1.0 - value;
            cfg.rho = r;
        }
        const AnyonicDensityMatrix rho = cfg.initial_state(model);
        if (twisted) {
            if (!header) {
                csv << param << ",pr_I,pr_psi\n";
                header = true;
            }
            const QubitDensity q = qubit_density(rho);
            csv << value;
            for (QubitCharge a : kQubitCharges) {
                double p = 0.0;
                try {
                    p = twisted_measure(q, a).probability;
                } catch (const ZeroProbability &) {
                }
                csv << "," << p;
            }
            csv << "\n";
            continue;
        }
        const InterferometerConfig icfg = cfg.interferometer(model);
        const EquivalenceClasses classes = equivalence_classes(model, icfg.probe, icfg);
        if (!header) {
            csv << param << ",pr_transmitted";
            for (const ChargeClass &c : classes.classes) {
                csv << ",p_" << class_name(model, c);
            }
            csv << "\n";
            header = true;
        }
        csv << value << "," << outcome_probability(model, rho, icfg, ProbeOutcome::transmitted);
        for (const ChargeClass &c : classes.classes) {
            csv << "," << c.p_transmit;
        }
        csv << "\n";
    }
    return kExitOk;
}

int run_dump(const RunConfig &cfg, Outputs &out) {
    const AnyonModel model = load_model(cfg);
    const ModularMatrices mm = modular_matrices(model);
    json charges = json::array();
    for (Charge c : model.charges()) {
        charges.push_back(model.name(c));
    }
    json ot = json::object();
    for (Charge c : model.charges()) {
        ot[model.name(c)] = to_json(twisted_operator(model, c, 2).entries);
    }
    json doc = {{"model", model.model_name()},
                {"charges", charges},
                {"S", to_json(mm.S)},
                {"T", to_json(mm.T)},
                {"B", to_json(mm.B)},
                {"O_t", ot}};
    out.write_json("matrices.json", doc);
    std::cout << "wrote matrices for " << model.model_name() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Anyonic interferometry and twisted-measurement simulator"};
    app.require_subcommand(1);

    std::string config_path, model, probe, out_dir, twists, param;
    std::size_t probes = 0, trials = 0, steps = 11;
    std::uint64_t seed = 0;
    double rho00 = 0.0, from = 0.0, to = 0.0;
    unsigned threads = 1;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
        sub->add_option("--model", model, "builtin model (ising, trivial) or model file");
        sub->add_option("--probe", probe, "probe charge name");
        sub->add_option("--probes", probes, "probes per trajectory");
        sub->add_option("--trials", trials, "number of trajectories");
        sub->add_option("--seed", seed, "64-bit seed");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--twists", twists, "arm twists l,r");
        sub->add_option("--rho00", rho00, "initial qubit state diag(rho00, 1 - rho00)");
        sub->add_option("--threads", threads, "worker threads");
    };
    CLI::App *validate = app.add_subcommand("validate", "check the consistency equations of a model");
    CLI::App *interfere = app.add_subcommand("interfere", "seeded interferometry trajectories");
    CLI::App *twisted = app.add_subcommand("twisted", "twisted-interferometer measurement statistics");
    CLI::App *protocol = app.add_subcommand("protocol", "phase-gate protocol table");
    CLI::App *sweep = app.add_subcommand("sweep", "outcome probabilities over a parameter grid");
    CLI::App *dump = app.add_subcommand("dump", "S, T, B and O_t matrices as JSON");
    for (CLI::App *sub : {validate, interfere, twisted, protocol, sweep, dump}) {
        add_common(sub);
    }
    sweep->add_option("--param", param, "theta_I, theta_II, delta or rho00")->required();
    sweep->add_option("--from", from, "first grid value")->required();
    sweep->add_option("--to", to, "last grid value")->required();
    sweep->add_option("--steps", steps, "grid points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    CLI::App *sub = app.get_subcommands().front();
    auto given = [&](const char *flag) { return sub->count(flag) > 0; };
    Outputs outputs(".");
    try {
        RunConfig cfg;
        if (given("--config")) {
            cfg = load_config(config_path);
        }
        if (given("--model")) cfg.model = model;
        if (given("--probe")) cfg.probe = probe;
        if (given("--probes")) cfg.probes = probes;
        if (given("--trials")) cfg.trials = trials;
        if (given("--seed")) cfg.seed = seed;
        if (given("--out")) cfg.out = out_dir;
        if (given("--threads")) cfg.threads = threads;
        if (given("--rho00")) {
            Matrix r = Matrix::Zero(2, 2);
            r(0, 0) = rho00;
            r(1, 1) = 1.0 - rho00;
            cfg.rho = r;
        }
        if (given("--twists")) {
            int l = 0, r = 0;
            char comma = 0;
            std::istringstream in(twists);
            if (!(in >> l >> comma >> r) || comma != ',' || !in.eof()) {
                throw ParseError("--twists expects l,r");
            }
            cfg.twists = {l, r};
        }
        cfg.validate();
        outputs = Outputs(cfg.out);

        if (sub == validate) return run_validate(cfg);
        if (sub == interfere) return run_interfere(cfg, outputs);
        if (sub == twisted) {
            cfg.twists = {0, 2};
            return run_twisted(cfg, outputs);
        }
        if (sub == protocol) return run_protocol(outputs);
        if (sub == sweep) return run_sweep(cfg, param, from, to, steps, outputs);
        return run_dump(cfg, outputs);
    } catch (const ConsistencyViolation &e) {
        outputs.discard();
        std::cerr << "error: " << e.what() << "\n" << e.report().to_string();
        return kExitValidation;
    } catch (const MissingVacuum &e) {
        outputs.discard();
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const NonMultiplicityFree &e) {
        outputs.discard();
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ZeroProbability &e) {
        outputs.discard();
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const DegenerateTuning &e) {
        outputs.discard();
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception &e) {
        outputs.discard();
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
