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

#include <cmath>

#include <gtest/gtest.h>

#include "tqsim/benchgen.hpp"
#include "tqsim/metrics.hpp"
#include "tqsim/scheduler.hpp"

namespace tqsim {
namespace {

using Arities = std::vector<std::uint64_t>;

std::uint64_t total(const Counts &c) {
    std::uint64_t t = 0;
    for (const auto &[k, v] : c) {
        t += v;
    }
    return t;
}

TreeStructure tree_of(const Circuit &c, Partition p, Arities arities) {
    return TreeStructure{std::move(arities), slice(c, p)};
}

TEST(InstancesOf, Examples) {
    const Arities a{16, 2, 2};
    EXPECT_EQ(instances_of(a, 1), 16u);
    EXPECT_EQ(instances_of(a, 2), 32u);
    EXPECT_EQ(instances_of(a, 3), 64u);
    EXPECT_EQ(total_nodes(a), 113u);
    EXPECT_EQ(total_nodes(Arities{64, 1, 1}), 193u);
    EXPECT_EQ(instances_of(Arities{5000}, 1), 5000u);
    EXPECT_THROW(instances_of(a, 0), InvalidArgument);
    EXPECT_THROW(instances_of(a, 4), InvalidArgument);
}

TEST(EstimateSpeedup, NodeRatios) {
    const std::vector<std::pair<Arities, double>> table = {
        {{250, 2, 2}, 1.71}, {{20, 10, 5}, 2.46}, {{10, 10, 10}, 2.70}, {{5, 10, 20}, 2.84}, {{2, 2, 250}, 2.98}};
    for (const auto &[a, expected] : table) {
        EXPECT_NEAR(std::round(estimate_speedup(a, 1000) * 100) / 100, expected, 1e-12);
    }
    EXPECT_NEAR(estimate_speedup(Arities{250, 2, 2}, 1000), 3000.0 / 1750, 1e-15);
    EXPECT_DOUBLE_EQ(estimate_speedup(Arities{100}, 100), 1.0);
}

TEST(Validate, RejectsMalformedTrees) {
    const Circuit c = gen_ghz(3);
    EXPECT_THROW(validate(TreeStructure{{2, 2}, {c}}), InvalidArgument);
    EXPECT_THROW(validate(TreeStructure{{0}, {c}}), InvalidArgument);
    EXPECT_THROW(validate(TreeStructure{{2, 2}, {c, gen_ghz(4)}}), InvalidArgument);
    EXPECT_THROW(validate(TreeStructure{{1u << 30, 1u << 30}, {c, c}}), InvalidArgument);
}

TEST(ExecuteTree, NoiselessGhzKeepsSupport) {
    const auto r = execute_tree(tree_of(gen_ghz(3), Partition{{1}}, {2, 4}), NoiseModel{}, 9);
    EXPECT_EQ(total(r.counts), 8u);
    for (const auto &[bits, n] : r.counts) {
        EXPECT_TRUE(bits == "000" || bits == "111") << bits;
    }
    EXPECT_EQ(r.nodes_executed, 2u + 8u);
    EXPECT_EQ(r.seed, 9u);
}

TEST(ExecuteTree, DegenerateChain) {
    const Circuit c = gen_ghz(3);
    const auto r = execute_tree(tree_of(c, Partition{{1, 2}}, {1, 1, 1}), NoiseModel{}, 3);
    EXPECT_EQ(total(r.counts), 1u);
    EXPECT_EQ(r.nodes_executed, 3u);
    EXPECT_EQ(r.states_copied, 0u);
}

TEST(ExecuteTree, BernsteinVaziraniNodeCount) {
    const Circuit c = gen_bv(2, "11");
    const auto r =
        execute_tree(tree_of(c, Partition{{3, 6}}, {16, 2, 2}), NoiseModel({Depolarizing{0.001, std::nullopt}}), 5);
    EXPECT_EQ(total(r.counts), 64u);
    EXPECT_EQ(r.nodes_executed, 112u);
    // Every node but each parent's last child copies: 112 - (1 + 16 + 32).
    EXPECT_EQ(r.states_copied, 63u);
}

TEST(ExecuteTree, SeedDeterminismAcrossThreadCounts) {
    const Circuit c = gen_qft(6, true);
    const NoiseModel m = named_noise_model("ALL");
    const auto t = tree_of(c, Partition{{5, 12, 20}}, {7, 3, 4, 5});
    const auto ref = execute_tree(t, m, 42);
    EXPECT_EQ(total(ref.counts), 420u);
    for (unsigned threads : {1u, 2u, 3u, 8u, 64u}) {
        const auto r = execute_tree(t, m, 42, {threads, nullptr});
        EXPECT_EQ(r.counts, ref.counts) << threads;
        EXPECT_EQ(r.nodes_executed, ref.nodes_executed) << threads;
    }
    EXPECT_NE(execute_tree(t, m, 43).counts, ref.counts);
}

TEST(ExecuteTree, ParallelFallsBackWhenMemoryIsTight) {
    const Circuit c = gen_qft(5, true);
    const NoiseModel m({Depolarizing{0.01, std::nullopt}});
    const auto t = tree_of(c, Partition{{5, 12}}, {10, 4, 4});
    MemoryBudget tight(5 * state_bytes(5));
    const auto seq = execute_tree(t, m, 1);
    const auto par = execute_tree(t, m, 1, {8, &tight});
    EXPECT_EQ(seq.counts, par.counts);
    EXPECT_EQ(tight.used_bytes(), 0u);
}

TEST(ExecuteTree, CapacityError) {
    const auto t = tree_of(gen_qft(5), Partition{{5, 10}}, {2, 2, 2});
    MemoryBudget budget(3 * state_bytes(5));
    EXPECT_THROW(execute_tree(t, NoiseModel{}, 1, {1, &budget}), CapacityError);
    EXPECT_EQ(budget.used_bytes(), 0u);
    MemoryBudget enough(4 * state_bytes(5));
    EXPECT_NO_THROW(execute_tree(t, NoiseModel{}, 1, {1, &enough}));
}

TEST(ExecuteTree, ZeroNoiseMatchesExactDistribution) {
    for (const Circuit &c : {gen_qft(4), gen_qaoa_maxcut({{0, 1}, {1, 2}, {2, 3}, {3, 4}}, 0.4, 0.9)}) {
        auto s = init_state(c.n_qubits());
        apply_circuit(s, c);
        const auto exact = Distribution::of_state(s);
        const auto r = execute_tree(tree_of(c, Partition{{c.size() / 3, 2 * c.size() / 3}}, {20, 40, 40}),
                                    NoiseModel{}, 77);
        EXPECT_LE(tvd(exact, Distribution::from_counts(r.counts)), 0.02);
    }
}

TEST(ExecuteTree, ReadoutAppliedAtLeaves) {
    const auto r = execute_tree(tree_of(Circuit(2, {Gate(GateKind(GateTag::X), {0})}), Partition{}, {20000}),
                                NoiseModel({Readout{0.0, 1.0}}), 1);
    EXPECT_EQ(r.counts, (Counts{{"00", 20000}}));
}

TEST(ExecuteBaseline, MatchesSingleSliceTree) {
    const Circuit c = gen_qft(4, true);
    const NoiseModel m = named_noise_model("DCR");
    EXPECT_EQ(execute_baseline(c, m, 500, 11).counts, execute_tree(TreeStructure{{500}, {c}}, m, 11).counts);
}

TEST(ExecuteBaseline, NoGates) {
    EXPECT_EQ(execute_baseline(Circuit(1), NoiseModel{}, 100, 1).counts, (Counts{{"0", 100}}));
    EXPECT_THROW(execute_baseline(Circuit(1), NoiseModel{}, 0, 1), InvalidArgument);
}

TEST(ExecuteBaseline, DepolarizedX) {
    const auto r = execute_baseline(Circuit(1, {Gate(GateKind(GateTag::X), {0})}),
                                    NoiseModel({Depolarizing{0.1, std::nullopt}}), 100000, 2);
    EXPECT_NEAR(r.counts.at("0") / 100000.0, 0.2 / 3, 0.003);
    EXPECT_EQ(r.nodes_executed, 100000u);
}

TEST(ExecuteBaseline, Ghz3) {
    const auto r = execute_baseline(gen_ghz(3), NoiseModel{}, 10000, 3);
    EXPECT_LE(tvd(Distribution::from_counts(r.counts), Distribution{3, {{"000", 0.5}, {"111", 0.5}}}), 0.02);
}

}  // namespace
}  // namespace tqsim
