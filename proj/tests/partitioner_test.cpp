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

#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "support/oracle.hpp"
#include "tqsim/benchgen.hpp"
#include "tqsim/partitioner.hpp"
#include "tqsim/scheduler.hpp"

namespace tqsim {
namespace {

class RatioTimer : public ProfileTimer {
   public:
    explicit RatioTimer(double ratio) : ratio_(ratio) {
    }
    std::chrono::duration<double> time_copy(std::uint32_t n) override {
        return std::chrono::duration<double>(ratio_ * base(n));
    }
    std::chrono::duration<double> time_gate(std::uint32_t n) override {
        return std::chrono::duration<double>(base(n));
    }
    int calls = 0;

   private:
    double base(std::uint32_t n) {
        ++calls;
        return 1e-6 * n * (1 + (calls % 3));
    }
    double ratio_;
};

TEST(ProfileCopyCost, MockClocks) {
    const std::vector<std::uint32_t> widths{12, 16, 20};
    RatioTimer same(1.0), twenty(20.0), ten(10.0);
    EXPECT_NEAR(profile_copy_cost(widths, 10, same).gates_equivalent, 1.0, 1e-12);
    const auto p = profile_copy_cost(widths, 11, twenty);
    EXPECT_NEAR(p.gates_equivalent, 20.0, 1e-12);
    EXPECT_EQ(p.per_width.size(), 3u);
    EXPECT_NEAR(profile_copy_cost(widths, 10, ten).gates_equivalent, 10.0, 1e-12);
    EXPECT_EQ(profile_to_json(profile_copy_cost(std::vector<std::uint32_t>{4}, 10, ten)),
              R"({"gates_equivalent":10.0,"per_width":{"4":10.0}})");
}

TEST(ProfileCopyCost, RepsValidated) {
    RatioTimer t(1.0);
    EXPECT_THROW(profile_copy_cost(std::vector<std::uint32_t>{4}, 5, t), InvalidArgument);
    EXPECT_THROW(profile_copy_cost(std::vector<std::uint32_t>{}, 10, t), InvalidArgument);
}

TEST(ProfileCopyCost, SteadyTimerIsPositive) {
    SteadyProfileTimer timer;
    const auto p = profile_copy_cost(std::vector<std::uint32_t>{10}, 10, timer);
    EXPECT_GT(p.gates_equivalent, 0.0);
    EXPECT_TRUE(std::isfinite(p.gates_equivalent));
}

TEST(FirstSubcircuitErrorRate, Examples) {
    Circuit c(1);
    for (int i = 0; i < 10; ++i) {
        c.append(GateTag::H, {0});
    }
    EXPECT_NEAR(first_subcircuit_error_rate(c, NoiseModel({Depolarizing{0.001, std::nullopt}})),
                1 - std::pow(0.999, 10), 1e-15);
    EXPECT_NEAR(first_subcircuit_error_rate(c, NoiseModel({Depolarizing{0.001, std::nullopt}})), 0.009955, 1e-6);
    EXPECT_EQ(first_subcircuit_error_rate(c, NoiseModel{}), 0.0);
    EXPECT_EQ(first_subcircuit_error_rate(Circuit(1, {Gate(GateKind(GateTag::X), {0})}),
                                          NoiseModel({AmplitudeDamping{1.0}})),
              1.0);
}

TEST(FirstSubcircuitErrorRate, TwoQubitGatesCountTwoLocations) {
    const Circuit c(2, {Gate(GateKind(GateTag::CX), {0, 1})});
    EXPECT_NEAR(first_subcircuit_error_rate(c, NoiseModel({Depolarizing{0.1, std::nullopt}})), 1 - 0.81, 1e-15);
}

TEST(RequiredFirstShots, Examples) {
    EXPECT_EQ(required_first_shots(0.009955, 32000), 16u);
    EXPECT_EQ(required_first_shots(0.5, 32000), 380u);
    EXPECT_EQ(required_first_shots(0.0, 32000), 1u);
    EXPECT_EQ(required_first_shots(0.5, 100), 80u);  // 384.16 / 4.8416 = 79.3
    EXPECT_EQ(required_first_shots(0.9, 32000), 380u);
    EXPECT_EQ(required_first_shots(0.5, 10), 10u);
}

TEST(RequiredFirstShots, MonotoneUpToHalf) {
    std::uint64_t prev = 0;
    for (int i = 0; i <= 500; ++i) {
        const auto a = required_first_shots(i / 1000.0, 32000);
        EXPECT_GE(a, prev);
        prev = a;
    }
}

TEST(RestArity, Examples) {
    EXPECT_EQ(rest_arity(32000, 500, 6), 2u);
    EXPECT_EQ(rest_arity(64, 16, 2), 2u);
    EXPECT_EQ(rest_arity(1000, 1000, 3), 1u);
    EXPECT_EQ(rest_arity(1000, 1, 3), 10u);
    EXPECT_EQ(rest_arity(999, 1, 3), 9u);
    EXPECT_EQ(rest_arity(32000, 500, 7), 1u);
    EXPECT_THROW(rest_arity(10, 20, 1), InvalidArgument);
}

Circuit synthetic(std::uint32_t n, std::size_t gates) {
    Circuit c(n);
    for (std::size_t i = 0; i < gates; ++i) {
        c.append(GateTag::H, {static_cast<std::uint32_t>(i % n)});
    }
    return c;
}

TEST(PlanPartition, SingleShotIsBaseline) {
    const auto plan = plan_partition(gen_qft(5), NoiseModel({Depolarizing{0.001, std::nullopt}}), 1, {}, {});
    EXPECT_TRUE(plan.is_baseline());
    EXPECT_EQ(plan.arities, std::vector<std::uint64_t>{1});
    EXPECT_TRUE(plan.partition.boundaries.empty());
}

TEST(PlanPartition, Qft14ForcedFirstShots) {
    PlanOptions opts;
    opts.first_shots = 500;
    const auto plan = plan_partition(synthetic(14, 472), NoiseModel({Depolarizing{0.001, std::nullopt}}), 32000,
                                     CopyCostProfile{10.0, {}}, ResourceLimits{}, opts);
    EXPECT_EQ(plan.arities, (std::vector<std::uint64_t>{500, 2, 2, 2, 2, 2, 2}));
    EXPECT_EQ(plan.partition.slice_count(), 7u);
    EXPECT_NEAR(plan.predicted_speedup, 3.53, 0.01);
}

TEST(PlanPartition, BernsteinVaziraniSmallTree) {
    PlanOptions opts;
    opts.first_shots = 16;
    const auto plan = plan_partition(gen_bv(2, "11"), NoiseModel({Depolarizing{0.001, std::nullopt}}), 64,
                                     CopyCostProfile{1.0, {}}, ResourceLimits{}, opts);
    EXPECT_EQ(plan.arities, (std::vector<std::uint64_t>{16, 2, 2}));
    EXPECT_EQ(total_nodes(plan.arities), 113u);
}

TEST(PlanPartition, NoiseFreeMaximisesReuse) {
    const auto plan = plan_partition(gen_qft(8, true), NoiseModel{}, 32000, CopyCostProfile{10.0, {}}, {});
    EXPECT_FALSE(plan.is_baseline());
    EXPECT_EQ(plan.first_error_rate, 0.0);
    std::uint64_t product = 1;
    for (auto a : plan.arities) {
        product *= a;
    }
    EXPECT_GE(product, 32000u);
    // A_0 starts at 1 and only the round-robin top-up can raise it.
    EXPECT_LE(plan.arities[0], plan.arities[1] + 1);
}

TEST(PlanPartition, MemoryLimitShrinksDepth) {
    const Circuit c = synthetic(10, 200);
    const NoiseModel m({Depolarizing{0.001, std::nullopt}});
    const auto wide = plan_partition(c, m, 32000, CopyCostProfile{10.0, {}}, ResourceLimits{});
    const auto tight =
        plan_partition(c, m, 32000, CopyCostProfile{10.0, {}}, ResourceLimits{5 * state_bytes(10)});
    EXPECT_GT(wide.arities.size(), 4u);
    EXPECT_EQ(tight.arities.size(), 4u);  // k = 3: root plus 4 levels = 5 live states
    const auto none = plan_partition(c, m, 32000, CopyCostProfile{10.0, {}}, ResourceLimits{2 * state_bytes(10)});
    EXPECT_TRUE(none.is_baseline());
}

TEST(PlanPartition, ShortCircuitIsBaseline) {
    const auto plan = plan_partition(synthetic(3, 15), NoiseModel({Depolarizing{0.001, std::nullopt}}), 1000,
                                     CopyCostProfile{10.0, {}}, {});
    EXPECT_TRUE(plan.is_baseline());
    EXPECT_EQ(plan.arities, std::vector<std::uint64_t>{1000});
}

TEST(PlanPartition, JsonShape) {
    PartitionPlan plan;
    plan.partition.boundaries = {10, 20};
    plan.arities = {16, 2, 2};
    plan.predicted_speedup = 1.5;
    plan.first_error_rate = 0.25;
    EXPECT_EQ(plan_to_json(plan),
              R"({"boundaries":[10,20],"arities":[16,2,2],"predicted_speedup":1.5,"first_error_rate":0.25})");
}

TEST(PlanProperty, InvariantsOnRandomInputs) {
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 300; ++trial) {
        const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng() % 8);
        const Circuit c = testing::random_circuit(n, 1 + rng() % 300, rng);
        const NoiseModel m({Depolarizing{0.02 * u(rng), std::nullopt}, AmplitudeDamping{0.01 * u(rng)}});
        const std::uint64_t shots = 1 + rng() % 50000;
        const double cost = 0.5 + 20 * u(rng);
        const ResourceLimits limits{(2 + rng() % 12) * state_bytes(n)};
        const auto plan = plan_partition(c, m, shots, CopyCostProfile{cost, {}}, limits);

        std::uint64_t product = 1;
        for (auto a : plan.arities) {
            product *= a;
        }
        EXPECT_GE(product, shots);
        ASSERT_EQ(plan.arities.size(), plan.partition.slice_count());
        if (plan.is_baseline()) {
            EXPECT_EQ(plan.arities[0], shots);
            continue;
        }
        for (std::size_t i = 1; i < plan.arities.size(); ++i) {
            EXPECT_GE(plan.arities[i], 2u);
        }
        const auto parts = slice(c, plan.partition);
        const auto min_gates = std::max<std::size_t>(1, std::llround(cost));
        EXPECT_EQ(parts[0].size(), min_gates);
        std::size_t lo = SIZE_MAX, hi = 0;
        for (std::size_t i = 1; i < parts.size(); ++i) {
            EXPECT_GE(parts[i].size(), min_gates);
            lo = std::min(lo, parts[i].size());
            hi = std::max(hi, parts[i].size());
        }
        EXPECT_LE(hi - lo, 1u);
        EXPECT_LE((plan.arities.size() + 1) * state_bytes(n), limits.memory_budget_bytes);
        EXPECT_NEAR(plan.predicted_speedup, estimate_speedup(plan.arities, product), 1e-12);
    }
}

TEST(PlanProperty, FirstShotsMonotoneInErrorRate) {
    const Circuit c = gen_qft(10, true);
    std::uint64_t prev = 0;
    for (double p = 0; p <= 0.02; p += 0.0005) {
        const auto plan =
            plan_partition(c, NoiseModel({Depolarizing{p, std::nullopt}}), 32000, CopyCostProfile{10.0, {}}, {});
        const auto a0 = required_first_shots(plan.first_error_rate, 32000);
        EXPECT_GE(a0, prev);
        prev = a0;
    }
}

}  // namespace
}  // namespace tqsim
