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

#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <vector>

#include "tqsim/circuit.hpp"
#include "tqsim/memory.hpp"
#include "tqsim/noise.hpp"
#include "tqsim/statevector.hpp"

namespace tqsim {

/// Simulation tree: slice d is executed once per node at depth d + 1, and every state it
/// produces is reused by `arities[d]` children (for the last slice: that many leaves/outcomes).
struct TreeStructure {
    std::vector<std::uint64_t> arities;
    std::vector<Circuit> slices;
};

/// Throws InvalidArgument if the arity and slice counts differ, an arity is 0, widths differ,
/// or the outcome count overflows.
void validate(const TreeStructure &t);

/// Number of executions of subcircuit `i` (1-indexed): the product of the arities before it.
std::uint64_t instances_of(std::span<const std::uint64_t> arities, std::size_t i);
inline std::uint64_t instances_of(const TreeStructure &t, std::size_t i) {
    return instances_of(t.arities, i);
}

/// Product of all arities.
std::uint64_t total_outcomes(std::span<const std::uint64_t> arities);

/// Tree size including the root: 1 + sum_i instances_of(i).
std::uint64_t total_nodes(std::span<const std::uint64_t> arities);

/// Node-count ratio between a flat run of `n_baseline` shots over k equal slices and the tree:
/// k * n_baseline / sum_i instances_of(i).
double estimate_speedup(std::span<const std::uint64_t> arities, std::uint64_t n_baseline);

struct ExecutionOptions {
    /// Worker threads. Results do not depend on this value.
    unsigned threads = 1;
    /// Budget that every live state is charged against; nullptr uses MemoryBudget::process_default().
    MemoryBudget *budget = nullptr;
};

struct TreeRunResult {
    Counts counts;
    std::uint64_t nodes_executed = 0;
    std::uint64_t states_copied = 0;
    std::chrono::duration<double> wall_time{0};
    std::uint64_t seed = 0;
};

/// Depth-first execution of the simulation tree with fresh trajectory noise in every node.
///
/// A node at depth d copies its parent's state (the last child takes it over instead), runs
/// slice d with noise, then either recurses or, at a leaf, samples one outcome and applies
/// readout error. Every node draws from a RandomStream seeded by path_seed(master_seed, path),
/// so counts are identical for any thread count.
TreeRunResult execute_tree(const TreeStructure &t, const NoiseModel &m, std::uint64_t master_seed,
                           const ExecutionOptions &options = {});

/// `shots` independent full-circuit trajectories; the same as a one-slice tree with arity (shots).
TreeRunResult execute_baseline(const Circuit &c, const NoiseModel &m, std::uint64_t shots, std::uint64_t master_seed,
                               const ExecutionOptions &options = {});

}  // namespace tqsim
