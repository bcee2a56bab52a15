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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "support/oracle.hpp"
#include "tqsim/benchgen.hpp"
#include "tqsim/cli.hpp"
#include "tqsim/density.hpp"
#include "tqsim/metrics.hpp"
#include "tqsim/partitioner.hpp"
#include "tqsim/scheduler.hpp"

namespace {

using namespace tqsim;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

NoiseModel depolarizing(double p) {
    return NoiseModel({Depolarizing{p, std::nullopt}});
}

Distribution ideal_of(const Circuit &c) {
    auto s = init_state(c.n_qubits());
    apply_circuit(s, c);
    return Distribution::of_state(s);
}

Outcome tree_arithmetic() {
    const auto a = total_nodes(std::vector<std::uint64_t>{16, 2, 2});
    const auto b = total_nodes(std::vector<std::uint64_t>{64, 1, 1});
    return {a == 113 && b == 193, fmt("(16,2,2) -> %llu nodes, (64,1,1) -> %llu nodes", (unsigned long long)a,
                                      (unsigned long long)b)};
}

Outcome node_ratio_table() {
    const std::vector<std::pair<std::vector<std::uint64_t>, double>> rows = {
        {{250, 2, 2}, 1.71}, {{20, 10, 5}, 2.46}, {{10, 10, 10}, 2.70}, {{5, 10, 20}, 2.84}, {{2, 2, 250}, 2.98}};
    bool ok = true;
    std::string detail;
    for (const auto &[a, expected] : rows) {
        const double s = estimate_speedup(a, 1000);
        ok = ok && std::abs(std::round(s * 100) / 100 - expected) < 1e-9;
        detail += fmt("(%llu,%llu,%llu)=%.2f ", (unsigned long long)a[0], (unsigned long long)a[1],
                      (unsigned long long)a[2], s);
    }
    return {ok, detail};
}

Outcome qft14_plan() {
    // 472 gates on 14 qubits: QFT_14 blocks repeated and truncated.
    const Circuit block = gen_qft(14);
    Circuit c(14);
    while (c.size() < 472) {
        c.append(block.gates()[c.size() % block.size()]);
    }
    PlanOptions opts;
    opts.first_shots = 500;
    const auto plan = plan_partition(c, depolarizing(0.001), 32000, CopyCostProfile{10.0, {}}, ResourceLimits{}, opts);
    bool trailing_two = plan.arities.size() > 1;
    for (std::size_t i = 1; i < plan.arities.size(); ++i) {
        trailing_two = trailing_two && plan.arities[i] == 2;
    }
    const bool ok = plan.partition.slice_count() == 7 && plan.arities[0] == 500 && trailing_two &&
                    std::abs(plan.predicted_speedup - 3.53) <= 0.01;
    return {ok, fmt("slices=%zu A0=%llu trailing_all_2=%d predicted=%.4f", plan.partition.slice_count(),
                    (unsigned long long)plan.arities[0], int(trailing_two), plan.predicted_speedup)};
}

Outcome trajectory_vs_oracle() {
    std::mt19937_64 rng(2026);
    const Circuit c = testing::random_circuit(4, 40, rng);
    double worst = 0;
    std::string worst_name;
    std::uint64_t seed = 1000;
    for (auto name : kNamedNoiseModels) {
        const NoiseModel m = named_noise_model(name);
        const auto exact = output_distribution(evolve_density(c, m), m.readout());
        const auto run = execute_baseline(c, m, 200000, seed++);
        const double d = tvd(exact, Distribution::from_counts(run.counts));
        if (d >= worst) {
            worst = d;
            worst_name = std::string(name);
        }
    }
    return {worst <= 0.01, fmt("max TVD over 9 models = %.5f (%s), bound 0.01", worst, worst_name.c_str())};
}

Outcome tree_vs_baseline_fidelity() {
    struct Bench {
        const char *name;
        Circuit c;
    };
    const std::vector<Bench> benches = {{"BV_5", gen_bv(4, "1111")},
                                        {"GHZ_5", gen_ghz(5)},
                                        {"QFT_5", gen_qft(5, true)},
                                        {"QPE_5", gen_qpe(4, 1.0 / 3)}};
    const NoiseModel m = depolarizing(0.001);
    const std::uint64_t shots = 32000;
    bool ok = true;
    std::string detail;
    for (const auto &b : benches) {
        const auto ideal = ideal_of(b.c);
        const auto plan = plan_partition(b.c, m, shots, CopyCostProfile{2.0, {}}, ResourceLimits{});
        const TreeStructure t{plan.arities, slice(b.c, plan.partition)};
        double abs_sum = 0, tree_sum = 0, base_sum = 0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const double nf_tree = normalized_fidelity(ideal, Distribution::from_counts(execute_tree(t, m, seed).counts));
            const double nf_base = normalized_fidelity(
                ideal, Distribution::from_counts(execute_baseline(b.c, m, shots, seed + 100).counts));
            abs_sum += std::abs(nf_tree - nf_base);
            tree_sum += nf_tree;
            base_sum += nf_base;
        }
        const double mean_abs = abs_sum / 10;
        ok = ok && mean_abs <= 0.02 && !plan.is_baseline();
        detail += fmt("%s k=%zu mean|d|=%.4f (NF %.4f vs %.4f); ", b.name, plan.arities.size(), mean_abs,
                      tree_sum / 10, base_sum / 10);
    }
    return {ok, detail};
}

Outcome measured_speedup() {
    RunConfig cfg;
    cfg.circuit = gen_qft(12, true);
    cfg.noise = depolarizing(0.001);
    cfg.shots = 32000;
    cfg.mode = RunMode::Both;
    cfg.seed = 1;
    const auto j = nlohmann::json::parse(run_simulation(cfg));
    const double measured = j["timing"]["measured_speedup"];
    const double predicted = j["predicted_speedup"];
    const bool ok = measured >= 1.5 && measured >= 0.6 * predicted;
    return {ok, fmt("measured=%.3f predicted=%.3f ratio=%.3f (baseline %.2fs, tree %.2fs)", measured, predicted,
                    measured / predicted, j["timing"]["baseline_s"].get<double>(),
                    j["timing"]["tree_s"].get<double>())};
}

Outcome analytic_channels() {
    const auto dep = execute_baseline(Circuit(1, {Gate(GateKind(GateTag::X), {0})}), depolarizing(0.1), 100000, 7);
    const double p0 = dep.counts.count("0") ? dep.counts.at("0") / 100000.0 : 0.0;
    const auto ro = execute_baseline(Circuit(1), NoiseModel({Readout{0.02, 0.0}}), 100000, 8);
    const double p1 = ro.counts.count("1") ? ro.counts.at("1") / 100000.0 : 0.0;
    const bool ok = std::abs(p0 - 0.2 / 3) <= 0.003 && std::abs(p1 - 0.02) <= 0.002;
    return {ok, fmt("P(0|X,dep 0.1)=%.5f (0.0667+-0.003), P(1|readout 0.02)=%.5f (0.02+-0.002)", p0, p1)};
}

Outcome determinism() {
    auto counts_of = [](unsigned threads) {
        RunConfig cfg;
        cfg.circuit = gen_qft(8, true);
        cfg.noise = named_noise_model("ALL");
        cfg.shots = 8000;
        cfg.mode = RunMode::Both;
        cfg.seed = 12345;
        cfg.threads = threads;
        auto j = nlohmann::json::parse(run_simulation(cfg));
        j.erase("timing");
        return j.dump();
    };
    const auto a = counts_of(1), b = counts_of(1), c = counts_of(8);
    return {a == b && a == c, fmt("repeat identical=%d, threads 1 vs 8 identical=%d", int(a == b), int(a == c))};
}

Outcome qubit_error_bands() {
    const Circuit c = gen_qft(8, true);
    const NoiseModel m = depolarizing(0.001);
    const std::uint64_t shots = 32000;
    const std::string reference(8, '0');
    const auto plan = plan_partition(c, m, shots, CopyCostProfile{10.0, {}}, ResourceLimits{});
    const TreeStructure t{plan.arities, slice(c, plan.partition)};
    const auto tree = execute_tree(t, m, 4);
    std::uint64_t n_tree = 0;
    for (const auto &[k, v] : tree.counts) {
        n_tree += v;
    }
    const auto f_tree = qubit_error_frequency(tree.counts, reference);
    std::vector<double> f_base(8, 0.0);
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto f = qubit_error_frequency(execute_baseline(c, m, shots, seed).counts, reference);
        for (int q = 0; q < 8; ++q) {
            f_base[q] += f[q] / 3;
        }
    }
    bool ok = true;
    std::string detail = "z per qubit:";
    for (int q = 0; q < 8; ++q) {
        const double p = f_base[q];
        const double sigma = std::sqrt(p * (1 - p) * (1.0 / n_tree + 1.0 / (3.0 * shots)));
        const double z = sigma > 0 ? (f_tree[q] - p) / sigma : (f_tree[q] == p ? 0.0 : INFINITY);
        ok = ok && std::abs(z) <= 3;
        detail += fmt(" %+.2f", z);
    }
    return {ok, detail};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 tree node counts", tree_arithmetic},
        {"2 node-ratio speedup table", node_ratio_table},
        {"3 QFT_14 plan structure", qft14_plan},
        {"4 trajectory vs density oracle", trajectory_vs_oracle},
        {"5 tree vs baseline fidelity", tree_vs_baseline_fidelity},
        {"6 measured speedup QFT_12", measured_speedup},
        {"7 analytic channel rates", analytic_channels},
        {"8 determinism", determinism},
        {"9 qubit error frequency bands", qubit_error_bands},
    };
    int failures = 0;
    for (const auto &[name, fn] : criteria) {
        Outcome o{false, ""};
        try {
            o = fn();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s [%s] %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
