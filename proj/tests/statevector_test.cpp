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

#include "support/oracle.hpp"
#include "tqsim/benchgen.hpp"
#include "tqsim/statevector.hpp"

namespace tqsim {
namespace {

using C = std::complex<double>;

TEST(InitState, Basis) {
    const auto s1 = init_state(1);
    EXPECT_EQ(s1.dim(), 2);
    EXPECT_EQ(s1.amplitudes()[0], C(1));
    EXPECT_EQ(s1.amplitudes()[1], C(0));
    const auto s3 = init_state(3);
    EXPECT_EQ(s3.dim(), 8);
    EXPECT_EQ(s3.amplitudes()[0], C(1));
    EXPECT_EQ(s3.amplitudes().squaredNorm(), 1.0);
}

TEST(InitState, CapacityGuard) {
    EXPECT_THROW(init_state(27), CapacityError);
    MemoryBudget small(1024);
    EXPECT_THROW(init_state(7, small), CapacityError);  // 2048 bytes
    EXPECT_NO_THROW(init_state(6, small));
    EXPECT_THROW(init_state(0), InvalidArgument);
}

TEST(ApplyGate, XAndH) {
    auto s = init_state(1);
    apply_gate(s, Gate(GateKind(GateTag::X), {0}));
    EXPECT_EQ(s.amplitudes()[0], C(0));
    EXPECT_EQ(s.amplitudes()[1], C(1));
    auto h = init_state(1);
    apply_gate(h, Gate(GateKind(GateTag::H), {0}));
    EXPECT_NEAR(h.amplitudes()[0].real(), M_SQRT1_2, 1e-15);
    EXPECT_NEAR(h.amplitudes()[1].real(), M_SQRT1_2, 1e-15);
}

TEST(ApplyGate, LittleEndianControlTarget) {
    // X on qubit 0 then CX(0 -> 2): |101> = index 5.
    auto s = init_state(3);
    apply_gate(s, Gate(GateKind(GateTag::X), {0}));
    apply_gate(s, Gate(GateKind(GateTag::CX), {0, 2}));
    EXPECT_EQ(s.amplitudes()[5], C(1));
    EXPECT_EQ(to_bitstring(5, 3), "101");
}

TEST(ApplyGate, QubitIndexError) {
    auto s = init_state(2);
    EXPECT_THROW(apply_gate(s, Gate(GateKind(GateTag::X), {2})), InvalidArgument);
}

TEST(ApplyGate, BernsteinVaziraniThreeQubitsMatchesFullMatrix) {
    const Circuit c = gen_bv(2, "11");
    auto s = init_state(3);
    apply_circuit(s, c);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
    v[0] = 1;
    const Eigen::VectorXcd expected = testing::oracle_unitary(c) * v;
    EXPECT_LE((s.amplitudes() - expected).cwiseAbs().maxCoeff(), 1e-12);
    // Ancilla (qubit 2) is in |->, data qubits read "11".
    const auto p = probabilities(s);
    EXPECT_NEAR(p[0b011] + p[0b111], 1.0, 1e-12);
}

TEST(ApplyGateProperty, EngineMatchesFullMatrixOracle) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const Circuit c = testing::random_circuit(3, 1 + rng() % 30, rng);
        const Eigen::VectorXcd v = testing::random_state(3, rng);
        Statevector s(v, MemoryBudget::process_default());
        apply_circuit(s, c);
        const Eigen::VectorXcd expected = testing::oracle_unitary(c) * v;
        EXPECT_LE((s.amplitudes() - expected).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(ApplyGateProperty, WiderCircuitsMatchOracle) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const Circuit c = testing::random_circuit(5, 40, rng);
        auto s = init_state(5);
        apply_circuit(s, c);
        const Eigen::VectorXcd expected = testing::oracle_unitary(c).col(0);
        EXPECT_LE((s.amplitudes() - expected).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(ApplyGateProperty, NormPreserved) {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 30; ++trial) {
        const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng() % 10);
        const Circuit c = testing::random_circuit(n, rng() % 201, rng);
        auto s = init_state(n);
        double prev = 1;
        for (const auto &g : c.gates()) {
            apply_gate(s, g);
            const double norm = squared_norm(s);
            EXPECT_NEAR(norm, prev, 1e-12);
            prev = norm;
        }
        EXPECT_NEAR(std::sqrt(squared_norm(s)), 1.0, 1e-9);
    }
}

TEST(CopyState, DeepCopy) {
    auto s = init_state(1);
    auto t = copy_state(s);
    EXPECT_EQ(t.amplitudes(), s.amplitudes());
    apply_gate(t, Gate(GateKind(GateTag::X), {0}));
    EXPECT_EQ(s.amplitudes()[0], C(1));
    EXPECT_EQ(t.amplitudes()[1], C(1));
}

TEST(CopyState, RandomTenQubitVectorIsIdentical) {
    std::mt19937_64 rng(8);
    Statevector s(testing::random_state(10, rng), MemoryBudget::process_default());
    const auto t = copy_state(s);
    EXPECT_TRUE((t.amplitudes().array() == s.amplitudes().array()).all());
}

TEST(CopyState, BudgetExceeded) {
    MemoryBudget budget(2 * state_bytes(4));
    auto a = init_state(4, budget);
    auto b = copy_state(a);
    EXPECT_EQ(budget.used_bytes(), 2 * state_bytes(4));
    EXPECT_THROW(copy_state(a), CapacityError);
    {
        auto moved = std::move(b);
        EXPECT_EQ(budget.used_bytes(), 2 * state_bytes(4));
    }
    EXPECT_EQ(budget.used_bytes(), state_bytes(4));
    EXPECT_NO_THROW(copy_state(a));
}

TEST(SampleOutcome, Deterministic) {
    RandomStream rng(1);
    const auto s = init_state(1);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(sample_outcome(s, rng), "0");
    }
}

TEST(SampleOutcome, PlusStateFrequency) {
    auto s = init_state(1);
    apply_gate(s, Gate(GateKind(GateTag::H), {0}));
    RandomStream rng(2);
    int ones = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        ones += sample_outcome(s, rng) == "1";
    }
    EXPECT_NEAR(ones / double(n), 0.5, 0.01);
}

TEST(SampleOutcome, GhzSupport) {
    auto s = init_state(3);
    apply_circuit(s, gen_ghz(3));
    RandomStream rng(3);
    Counts counts;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        ++counts[sample_outcome(s, rng)];
    }
    ASSERT_EQ(counts.size(), 2u);
    EXPECT_NEAR(counts["000"] / double(n), 0.5, 0.01);
    EXPECT_NEAR(counts["111"] / double(n), 0.5, 0.01);
}

TEST(SampleOutcomeProperty, MarginalsWithinMultinomialBounds) {
    std::mt19937_64 gen(17);
    const int n = 200000;
    for (int trial = 0; trial < 5; ++trial) {
        Statevector s(testing::random_state(3, gen), MemoryBudget::process_default());
        const auto p = probabilities(s);
        RandomStream rng(100 + trial);
        std::vector<int> hits(8, 0);
        for (int i = 0; i < n; ++i) {
            ++hits[sample_index(s, rng)];
        }
        for (int k = 0; k < 8; ++k) {
            EXPECT_NEAR(hits[k] / double(n), p[k], 5 * testing::binomial_sigma(p[k], n) + 1e-9) << k;
        }
    }
}

TEST(Bitstrings, RoundTrip) {
    EXPECT_EQ(to_bitstring(6, 4), "0110");
    EXPECT_EQ(from_bitstring("0110"), 6u);
    EXPECT_THROW(from_bitstring("01a"), InvalidArgument);
}

}  // namespace
}  // namespace tqsim
