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

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tqsim/circuit.hpp"
#include "tqsim/memory.hpp"
#include "tqsim/noise.hpp"

namespace tqsim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCapacity = 3;

enum class RunMode { Baseline, Tree, Both };

struct RunConfig {
    Circuit circuit;
    NoiseModel noise;
    std::uint64_t shots = 32000;
    RunMode mode = RunMode::Tree;
    std::uint64_t seed = 1;
    /// Explicit tree; boundaries default to an even split when only arities are given.
    std::optional<std::vector<std::uint64_t>> arities;
    std::optional<std::vector<std::size_t>> boundaries;
    std::optional<std::uint64_t> first_shots;
    double copy_cost = 10.0;
    unsigned threads = 1;
    std::size_t memory_budget_bytes = MemoryBudget::kDefaultBytes;
    /// Reference for normalized fidelity; derived by an exact noiseless run when absent and n <= 20.
    std::optional<std::map<std::string, double>> ideal;
    /// Reference bitstring for per-qubit error frequencies.
    std::optional<std::string> reference;
};

/// Runs the configured simulation(s) and returns the results JSON document.
std::string run_simulation(const RunConfig &cfg);

/// Parses a byte count with an optional K, M, G or T suffix (binary multiples), e.g. "512M".
std::size_t parse_byte_size(const std::string &text);

/// Entry point of the `tqsim` tool. Returns 0 on success, 2 on configuration or parse errors
/// and 3 when the memory budget is exceeded.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace tqsim
