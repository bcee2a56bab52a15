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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tqsim/circuit.hpp"
#include "tqsim/memory.hpp"
#include "tqsim/noise.hpp"

namespace tqsim {

/// State-copy time in units of one gate application.
struct CopyCostProfile {
    double gates_equivalent = 10.0;
    /// Ratio measured at each profiled width.
    std::map<std::uint32_t, double> per_width;
};

/// Clock used by profile_copy_cost. Each call returns the duration of one operation.
class ProfileTimer {
   public:
    virtual ~ProfileTimer() = default;
    virtual std::chrono::duration<double> time_copy(std::uint32_t n_qubits) = 0;
    virtual std::chrono::duration<double> time_gate(std::uint32_t n_qubits) = 0;
};

/// Times real statevector copies and H gates on qubit 0 with std::chrono::steady_clock.
class SteadyProfileTimer : public ProfileTimer {
   public:
    explicit SteadyProfileTimer(MemoryBudget &budget = MemoryBudget::process_default()) : budget_(&budget) {
    }
    std::chrono::duration<double> time_copy(std::uint32_t n_qubits) override;
    std::chrono::duration<double> time_gate(std::uint32_t n_qubits) override;

   private:
    MemoryBudget *budget_;
};

/// Median copy time over median gate time per width, averaged over widths.
/// Throws InvalidArgument if reps < 10 or `widths` is empty.
CopyCostProfile profile_copy_cost(std::span<const std::uint32_t> widths, int reps, ProfileTimer &timer);

struct ResourceLimits {
    std::size_t memory_budget_bytes = MemoryBudget::kDefaultBytes;

    /// floor(budget / (16 * 2^n)).
    std::size_t max_live_states(std::uint32_t n_qubits) const;
};

/// 1 - prod_i (1 - e_i) over every noise location (gate, touched qubit) of `slice`.
double first_subcircuit_error_rate(const Circuit &slice, const NoiseModel &m);

/// Smallest first-level sample size meeting the margin `eps` at normal quantile `z` with
/// finite-population correction, clamped to [1, N]. p_hat above 0.5 is treated as 0.5.
std::uint64_t required_first_shots(double p_hat, std::uint64_t n_shots, double z = 1.96, double eps = 0.05);

/// floor((N / A0)^(1/k)).
std::uint64_t rest_arity(std::uint64_t n_shots, std::uint64_t a0, std::uint64_t k);

struct PartitionPlan {
    Partition partition;
    std::vector<std::uint64_t> arities;
    double predicted_speedup = 1.0;
    double first_error_rate = 0.0;

    /// True for the single-slice plan with arities (N).
    bool is_baseline() const {
        return arities.size() == 1;
    }
};

struct PlanOptions {
    /// Replaces the sample-size estimate for the first level.
    std::optional<std::uint64_t> first_shots;
    double z = 1.96;
    double eps = 0.05;
};

/// Chooses slice boundaries and arities for a simulation tree.
///
/// The first slice holds round(copy cost) gates. The remainder is cut into the largest number
/// k of near-equal slices such that each trailing arity is at least 2, each slice is no shorter
/// than the first and k + 2 states fit in memory. Arities are then raised round-robin from the
/// first level until their product reaches N. Falls back to arities (N) when no k qualifies.
PartitionPlan plan_partition(const Circuit &c, const NoiseModel &m, std::uint64_t n_shots, const CopyCostProfile &cost,
                             const ResourceLimits &limits, const PlanOptions &options = {});

/// {"boundaries":[...], "arities":[...], "predicted_speedup":x, "first_error_rate":y}
std::string plan_to_json(const PartitionPlan &plan);

/// {"gates_equivalent":x, "per_width":{"12":r, ...}}
std::string profile_to_json(const CopyCostProfile &profile);

}  // namespace tqsim
