// Copyright 2026 The TQSim Authors
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

#include "tqsim/cli.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tqsim/benchgen.hpp"
#include "tqsim/metrics.hpp"
#include "tqsim/partitioner.hpp"
#include "tqsim/qasm.hpp"
#include "tqsim/scheduler.hpp"

namespace tqsim {

namespace {

using json = nlohmann::ordered_json;

constexpr std::uint64_t kBaselineSeedSalt = 0x6a09e667f3bcc909ull;

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidArgument("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string &text, const std::string &path, std::ostream &out) {
    if (path.empty()) {
        out << text << '\n';
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw InvalidArgument("cannot write '" + path + "'");
    }
    f << text << '\n';
}

std::size_t budget_from_env() {
    const char *v = std::getenv("TQSIM_MEM_BUDGET");
    return v != nullptr && *v != '\0' ? parse_byte_size(v) : MemoryBudget::kDefaultBytes;
}

NoiseModel noise_from(const std::string &path, const std::string &name) {
    if (!path.empty() && !name.empty()) {
        throw InvalidArgument("--noise and --noise-model are mutually exclusive");
    }
    if (!path.empty()) {
        return load_noise_model(read_file(path));
    }
    if (!name.empty()) {
        return named_noise_model(name);
    }
    return NoiseModel{};
}

json counts_json(const Counts &counts) {
    json j = json::object();
    for (const auto &[bits, c] : counts) {
        j[bits] = c;
    }
    return j;
}

// Reference bitstring for error frequencies: explicit, or the ideal outcome when it is deterministic.
std::optional<std::string> error_reference(const RunConfig &cfg, const std::optional<Distribution> &ideal) {
    if (cfg.reference) {
        return cfg.reference;
    }
    if (ideal) {
        for (const auto &[bits, p] : ideal->probs) {
            if (p > 1 - 1e-9) {
                return bits;
            }
        }
    }
    return std::nullopt;
}

std::optional<double> try_normalized_fidelity(const std::optional<Distribution> &ideal, const Counts &counts) {
    if (!ideal) {
        return std::nullopt;
    }
    try {
        return normalized_fidelity(*ideal, Distribution::from_counts(counts));
    } catch (const InvalidArgument &) {
        return std::nullopt;
    }
}

std::vector<std::size_t> even_boundaries(std::size_t gates, std::size_t k) {
    std::vector<std::size_t> b;
    for (std::size_t i = 1; i < k; ++i) {
        b.push_back(i * gates / k);
    }
    return b;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> parse_edges(const std::string &text) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto dash = item.find('-');
        if (dash == std::string::npos) {
            throw InvalidArgument("edge '" + item + "' is not of the form u-v");
        }
        try {
            edges.emplace_back(std::stoul(item.substr(0, dash)), std::stoul(item.substr(dash + 1)));
        } catch (const std::logic_error &) {
            throw InvalidArgument("edge '" + item + "' is not of the form u-v");
        }
    }
    return edges;
}

}  // namespace

std::size_t parse_byte_size(const std::string &text) {
    std::size_t pos = 0;
    unsigned long long value = 0;
    try {
        value = std::stoull(text, &pos);
    } catch (const std::logic_error &) {
        throw InvalidArgument("invalid byte size '" + text + "'");
    }
    std::string suffix = text.substr(pos);
    for (auto &ch : suffix) {
        ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    }
    int shift = 0;
    if (suffix.empty() || suffix == "B") {
        shift = 0;
    } else if (suffix == "K" || suffix == "KB" || suffix == "KIB") {
        shift = 10;
    } else if (suffix == "M" || suffix == "MB" || suffix == "MIB") {
        shift = 20;
    } else if (suffix == "G" || suffix == "GB" || suffix == "GIB") {
        shift = 30;
    } else if (suffix == "T" || suffix == "TB" || suffix == "TIB") {
        shift = 40;
    } else {
        throw InvalidArgument("invalid byte size '" + text + "'");
    }
    if (value == 0 || value > (std::numeric_limits<std::size_t>::max() >> shift)) {
        throw InvalidArgument("byte size '" + text + "' out of range");
    }
    return static_cast<std::size_t>(value) << shift;
}

std::string run_simulation(const RunConfig &cfg) {
    if (cfg.shots == 0) {
        throw InvalidArgument("shots must be at least 1");
    }
    const Circuit &c = cfg.circuit;
    MemoryBudget budget(cfg.memory_budget_bytes);
    const ExecutionOptions exec{cfg.threads, &budget};

    std::optional<Distribution> ideal;
    if (cfg.ideal) {
        Distribution d;
        d.n_qubits = c.n_qubits();
        d.probs = *cfg.ideal;
        d.validate(1e-6);
        ideal = std::move(d);
    } else if (c.n_qubits() <= 20) {
        Statevector s(c.n_qubits(), budget);
        apply_circuit(s, c);
        ideal = Distribution::of_state(s);
    }
    const auto reference = error_reference(cfg, ideal);
    if (reference && reference->size() != c.n_qubits()) {
        throw InvalidArgument("reference bitstring must have " + std::to_string(c.n_qubits()) + " characters");
    }

    json j;
    j["circuit"] = {{"n_qubits", c.n_qubits()}, {"n_gates", c.size()}};
    j["mode"] = cfg.mode == RunMode::Baseline ? "baseline" : cfg.mode == RunMode::Tree ? "tree" : "both";
    j["seed"] = cfg.seed;
    j["shots"] = cfg.shots;

    json metrics = json::object();
    json timing = json::object();
    std::optional<TreeRunResult> tree_run, base_run;
    double predicted = 0;

    if (cfg.mode != RunMode::Baseline) {
        Partition partition;
        std::vector<std::uint64_t> arities;
        double first_error_rate = 0;
        if (cfg.arities) {
            arities = *cfg.arities;
            if (arities.empty()) {
                throw InvalidArgument("--arities needs at least one value");
            }
            partition.boundaries = cfg.boundaries ? *cfg.boundaries : even_boundaries(c.size(), arities.size());
            if (partition.slice_count() != arities.size()) {
                throw InvalidArgument("--boundaries must give one fewer cut than there are arities");
            }
            if (total_outcomes(arities) < cfg.shots) {
                throw InvalidArgument("arities multiply to fewer outcomes than --shots");
            }
        } else {
            if (cfg.boundaries) {
                throw InvalidArgument("--boundaries requires --arities");
            }
            PlanOptions opts;
            opts.first_shots = cfg.first_shots;
            const auto plan = plan_partition(c, cfg.noise, cfg.shots, CopyCostProfile{cfg.copy_cost, {}},
                                             ResourceLimits{cfg.memory_budget_bytes}, opts);
            partition = plan.partition;
            arities = plan.arities;
            first_error_rate = plan.first_error_rate;
        }
        TreeStructure t{arities, slice(c, partition)};
        predicted = estimate_speedup(arities, total_outcomes(arities));
        tree_run = execute_tree(t, cfg.noise, cfg.seed, exec);
        json tree;
        tree["boundaries"] = partition.boundaries;
        tree["arities"] = arities;
        tree["nodes_executed"] = tree_run->nodes_executed;
        tree["states_copied"] = tree_run->states_copied;
        if (!cfg.arities) {
            tree["first_error_rate"] = first_error_rate;
        }
        j["tree"] = tree;
        timing["tree_s"] = tree_run->wall_time.count();
    }

    if (cfg.mode != RunMode::Tree) {
        const std::uint64_t base_seed = cfg.seed ^ kBaselineSeedSalt;
        base_run = execute_baseline(c, cfg.noise, cfg.shots, base_seed, exec);
        timing["baseline_s"] = base_run->wall_time.count();
        if (cfg.mode == RunMode::Both) {
            j["baseline"] = {{"seed", base_seed},
                             {"nodes_executed", base_run->nodes_executed},
                             {"states_copied", base_run->states_copied},
                             {"counts", counts_json(base_run->counts)}};
        }
    }

    const TreeRunResult &primary = tree_run ? *tree_run : *base_run;
    j["counts"] = counts_json(primary.counts);

    if (const auto nf = try_normalized_fidelity(ideal, primary.counts)) {
        metrics["normalized_fidelity"] = *nf;
    }
    if (reference) {
        metrics["reference"] = *reference;
        metrics["qubit_error_frequency"] = qubit_error_frequency(primary.counts, *reference);
    }
    if (cfg.mode == RunMode::Both) {
        const auto nf_tree = try_normalized_fidelity(ideal, tree_run->counts);
        const auto nf_base = try_normalized_fidelity(ideal, base_run->counts);
        if (nf_base) {
            metrics["baseline_normalized_fidelity"] = *nf_base;
        }
        if (nf_tree && nf_base) {
            metrics["normalized_fidelity_delta"] = *nf_tree - *nf_base;
        }
        if (reference) {
            metrics["baseline_qubit_error_frequency"] = qubit_error_frequency(base_run->counts, *reference);
        }
        const double tree_s = tree_run->wall_time.count();
        timing["measured_speedup"] = tree_s > 0 ? base_run->wall_time.count() / tree_s : 0.0;
    }
    j["metrics"] = metrics;
    j["timing"] = timing;
    if (tree_run) {
        j["predicted_speedup"] = predicted;
    }
    return j.dump();
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Noisy quantum circuit simulator with simulation-tree state reuse", "tqsim"};
    app.require_subcommand(1);

    // run
    auto *run = app.add_subcommand("run", "Simulate a circuit in baseline, tree or both modes");
    std::string circuit_path, noise_path, noise_name, mode = "tree", ideal_path, reference, out_path;
    std::uint64_t shots = 32000, seed = 1, first_shots = 0;
    std::vector<std::uint64_t> arities;
    std::vector<std::size_t> boundaries;
    double copy_cost = 10.0;
    unsigned threads = 1;
    run->add_option("--circuit", circuit_path, "OpenQASM 2.0 file")->required();
    run->add_option("--noise", noise_path, "Noise-model JSON file");
    run->add_option("--noise-model", noise_name, "Named noise model (DC, DCR, TR, TRR, AD, ADR, PD, PDR, ALL)");
    run->add_option("--shots", shots, "Number of outcomes")->check(CLI::PositiveNumber);
    run->add_option("--mode", mode, "baseline, tree or both")->check(CLI::IsMember({"baseline", "tree", "both"}));
    run->add_option("--seed", seed, "Master seed");
    run->add_option("--arities", arities, "Explicit arities, comma separated")->delimiter(',');
    run->add_option("--boundaries", boundaries, "Explicit slice boundaries, comma separated")->delimiter(',');
    run->add_option("--first-shots", first_shots, "Force the first-level arity of the plan")
        ->check(CLI::PositiveNumber);
    run->add_option("--copy-cost", copy_cost, "State-copy cost in gate units")->check(CLI::PositiveNumber);
    run->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 1024u));
    run->add_option("--ideal", ideal_path, "Ideal distribution JSON {bitstring: probability}");
    run->add_option("--reference", reference, "Reference bitstring for qubit error frequencies");
    run->add_option("--out", out_path, "Write results JSON here instead of stdout");

    // plan
    auto *plan = app.add_subcommand("plan", "Print the partition plan for a circuit");
    std::string plan_circuit, plan_noise, plan_noise_name;
    std::uint64_t plan_shots = 32000, plan_first = 0;
    double plan_cost = 10.0;
    plan->add_option("--circuit", plan_circuit, "OpenQASM 2.0 file")->required();
    plan->add_option("--noise", plan_noise, "Noise-model JSON file");
    plan->add_option("--noise-model", plan_noise_name, "Named noise model");
    plan->add_option("--shots", plan_shots, "Number of outcomes")->check(CLI::PositiveNumber);
    plan->add_option("--copy-cost", plan_cost, "State-copy cost in gate units")->check(CLI::PositiveNumber);
    plan->add_option("--first-shots", plan_first, "Force the first-level arity")->check(CLI::PositiveNumber);

    // profile
    auto *profile = app.add_subcommand("profile", "Measure state-copy cost in gate units");
    std::vector<std::uint32_t> widths{12, 16, 20};
    int reps = 10;
    profile->add_option("--widths", widths, "Qubit counts, comma separated")->delimiter(',');
    profile->add_option("--reps", reps, "Repetitions per width (>= 10)");

    // gen
    auto *gen = app.add_subcommand("gen", "Emit a benchmark circuit as OpenQASM");
    std::string family, hidden, edges, gen_out;
    std::uint32_t n = 0, layers = 1;
    double phase = 0, beta = 0, gamma = 0;
    bool prelude = false;
    gen->add_option("family", family, "qft, bv, ghz, qpe or qaoa")->required();
    gen->add_option("--n", n, "Width (data or counting qubits for bv and qpe)");
    gen->add_option("--hidden", hidden, "BV hidden string (default all ones)");
    gen->add_option("--phase", phase, "QPE eigenphase in [0, 1)");
    gen->add_flag("--prelude", prelude, "QFT: prepend a Hadamard layer");
    gen->add_option("--edges", edges, "QAOA edges, e.g. 0-1,1-2,2-0");
    gen->add_option("--beta", beta, "QAOA mixer angle");
    gen->add_option("--gamma", gamma, "QAOA cost angle");
    gen->add_option("--layers", layers, "QAOA layers");
    gen->add_option("--out", gen_out, "Write QASM here instead of stdout");

    std::vector<std::string> argv_storage{"tqsim"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto &a : argv_storage) {
        argv.push_back(a.data());
    }

    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::ParseError &e) {
            const int code = app.exit(e, out, err);
            return code == 0 ? kExitOk : kExitConfig;
        }

        if (*run) {
            RunConfig cfg;
            cfg.circuit = parse_qasm(read_file(circuit_path));
            cfg.noise = noise_from(noise_path, noise_name);
            cfg.shots = shots;
            cfg.mode = mode == "baseline" ? RunMode::Baseline : mode == "both" ? RunMode::Both : RunMode::Tree;
            cfg.seed = seed;
            if (!arities.empty()) {
                cfg.arities = arities;
            }
            if (!boundaries.empty()) {
                cfg.boundaries = boundaries;
            }
            if (first_shots > 0) {
                cfg.first_shots = first_shots;
            }
            cfg.copy_cost = copy_cost;
            cfg.threads = threads;
            cfg.memory_budget_bytes = budget_from_env();
            if (!ideal_path.empty()) {
                cfg.ideal = nlohmann::json::parse(read_file(ideal_path)).get<std::map<std::string, double>>();
            }
            if (!reference.empty()) {
                cfg.reference = reference;
            }
            write_output(run_simulation(cfg), out_path, out);
        } else if (*plan) {
            const Circuit c = parse_qasm(read_file(plan_circuit));
            const NoiseModel m = noise_from(plan_noise, plan_noise_name);
            PlanOptions opts;
            if (plan_first > 0) {
                opts.first_shots = plan_first;
            }
            const auto p = plan_partition(c, m, plan_shots, CopyCostProfile{plan_cost, {}},
                                          ResourceLimits{budget_from_env()}, opts);
            out << plan_to_json(p) << '\n';
        } else if (*profile) {
            MemoryBudget budget(budget_from_env());
            SteadyProfileTimer timer(budget);
            out << profile_to_json(profile_copy_cost(widths, reps, timer)) << '\n';
        } else if (*gen) {
            Circuit c;
            if (family == "qft") {
                c = gen_qft(n, prelude);
            } else if (family == "bv") {
                const std::string h = hidden.empty() ? std::string(n, '1') : hidden;
                c = gen_bv(n == 0 ? static_cast<std::uint32_t>(h.size()) : n, h);
            } else if (family == "ghz") {
                c = gen_ghz(n);
            } else if (family == "qpe") {
                c = gen_qpe(n, phase);
            } else if (family == "qaoa") {
                c = gen_qaoa_maxcut(parse_edges(edges), beta, gamma, layers, n);
            } else {
                throw InvalidArgument("unknown family '" + family + "' (expected qft, bv, ghz, qpe or qaoa)");
            }
            std::string text = to_qasm(c);
            if (!text.empty() && text.back() == '\n') {
                text.pop_back();
            }
            write_output(text, gen_out, out);
        }
        return kExitOk;
    } catch (const CapacityError &e) {
        err << "tqsim: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const Error &e) {
        err << "tqsim: " << e.what() << '\n';
        return kExitConfig;
    } catch (const nlohmann::json::exception &e) {
        err << "tqsim: invalid JSON: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        err << "tqsim: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace tqsim
