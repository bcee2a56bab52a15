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

#include "tqsim/partitioner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "tqsim/scheduler.hpp"
#include "tqsim/statevector.hpp"

namespace tqsim {

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// a * b, saturating at uint64 max.
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a * b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t k) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        r = sat_mul(r, base);
    }
    return r;
}

PartitionPlan baseline_plan(std::uint64_t n_shots, double first_error_rate) {
    PartitionPlan plan;
    plan.arities = {n_shots};
    plan.predicted_speedup = 1.0;
    plan.first_error_rate = first_error_rate;
    return plan;
}

}  // namespace

std::chrono::duration<double> SteadyProfileTimer::time_copy(std::uint32_t n_qubits) {
    const Statevector s(n_qubits, *budget_);
    const auto t0 = std::chrono::steady_clock::now();
    const Statevector c(s);
    const auto t1 = std::chrono::steady_clock::now();
    if (c.amplitudes()[0] != s.amplitudes()[0]) {
        throw Error("state copy mismatch during profiling");
    }
    return t1 - t0;
}

std::chrono::duration<double> SteadyProfileTimer::time_gate(std::uint32_t n_qubits) {
    Statevector s(n_qubits, *budget_);
    const Gate h(GateKind(GateTag::H), {0});
    const auto t0 = std::chrono::steady_clock::now();
    apply_gate(s, h);
    return std::chrono::steady_clock::now() - t0;
}

CopyCostProfile profile_copy_cost(std::span<const std::uint32_t> widths, int reps, ProfileTimer &timer) {
    if (reps < 10) {
        throw InvalidArgument("profiling needs at least 10 repetitions, got " + std::to_string(reps));
    }
    if (widths.empty()) {
        throw InvalidArgument("profiling needs at least one width");
    }
    CopyCostProfile profile;
    double sum = 0;
    for (auto n : widths) {
        std::vector<double> copy, gate;
        for (int r = 0; r < reps; ++r) {
            copy.push_back(timer.time_copy(n).count());
            gate.push_back(timer.time_gate(n).count());
        }
        const double g = median(gate);
        if (!(g > 0)) {
            throw Error("gate time measured as zero at width " + std::to_string(n));
        }
        const double ratio = median(copy) / g;
        profile.per_width[n] = ratio;
        sum += ratio;
    }
    profile.gates_equivalent = sum / static_cast<double>(profile.per_width.size());
    return profile;
}

std::size_t ResourceLimits::max_live_states(std::uint32_t n_qubits) const {
    return memory_budget_bytes / state_bytes(n_qubits);
}

double first_subcircuit_error_rate(const Circuit &slice, const NoiseModel &m) {
    double survive = 1.0;
    for (const auto &g : slice.gates()) {
        const double e = m.location_error_rate(g.kind.tag());
        for (std::size_t q = 0; q < g.qubits.size(); ++q) {
            survive *= 1.0 - e;
        }
    }
    return std::clamp(1.0 - survive, 0.0, 1.0);
}

std::uint64_t required_first_shots(double p_hat, std::uint64_t n_shots, double z, double eps) {
    if (!(p_hat >= 0 && p_hat <= 1)) {
        throw InvalidArgument("error rate must lie in [0, 1]");
    }
    if (n_shots == 0) {
        throw InvalidArgument("shots must be at least 1");
    }
    if (!(z > 0) || !(eps > 0)) {
        throw InvalidArgument("z and eps must be positive");
    }
    const double p = std::min(p_hat, 0.5);
    const double n0 = z * z * p * (1 - p) / (eps * eps);
    const double n = n0 / (1 + n0 / static_cast<double>(n_shots));
    const double a0 = std::ceil(n - 1e-9);
    return std::clamp<std::uint64_t>(a0 < 1 ? 1 : static_cast<std::uint64_t>(a0), 1, n_shots);
}

std::uint64_t rest_arity(std::uint64_t n_shots, std::uint64_t a0, std::uint64_t k) {
    if (a0 == 0 || k == 0 || a0 > n_shots) {
        throw InvalidArgument("rest_arity needs N >= A0 >= 1 and k >= 1");
    }
    // Largest r with r^k * A0 <= N, seeded from the floating-point root.
    auto r = static_cast<std::uint64_t>(
        std::floor(std::pow(static_cast<double>(n_shots) / static_cast<double>(a0), 1.0 / static_cast<double>(k))));
    r = std::max<std::uint64_t>(r, 1);
    while (sat_mul(sat_pow(r + 1, k), a0) <= n_shots) {
        ++r;
    }
    while (r > 1 && sat_mul(sat_pow(r, k), a0) > n_shots) {
        --r;
    }
    return r;
}

PartitionPlan plan_partition(const Circuit &c, const NoiseModel &m, std::uint64_t n_shots, const CopyCostProfile &cost,
                             const ResourceLimits &limits, const PlanOptions &options) {
    if (c.empty()) {
        throw InvalidArgument("cannot plan an empty circuit");
    }
    if (n_shots == 0) {
        throw InvalidArgument("shots must be at least 1");
    }
    if (!(cost.gates_equivalent > 0) || !std::isfinite(cost.gates_equivalent)) {
        throw InvalidArgument("copy cost must be positive and finite");
    }
    const auto min_gates =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(cost.gates_equivalent)));
    const std::size_t first_len = std::min(min_gates, c.size());
    const auto slices = slice(c, first_len < c.size() ? Partition{{first_len}} : Partition{});
    const double p_hat = first_subcircuit_error_rate(slices.front(), m);
    if (n_shots == 1 || c.size() < 2 * min_gates) {
        return baseline_plan(n_shots, p_hat);
    }

    const std::uint64_t a0 = options.first_shots
                                 ? std::clamp<std::uint64_t>(*options.first_shots, 1, n_shots)
                                 : required_first_shots(p_hat, n_shots, options.z, options.eps);
    const std::size_t rem = c.size() - min_gates;
    const std::size_t max_states = limits.max_live_states(c.n_qubits());

    std::size_t k = 0;
    for (std::size_t cand = 1; cand <= rem / min_gates; ++cand) {
        if (rest_arity(n_shots, a0, cand) < 2) {
            break;
        }
        if (cand + 2 <= max_states) {
            k = cand;
        }
    }
    if (k == 0) {
        return baseline_plan(n_shots, p_hat);
    }

    PartitionPlan plan;
    plan.first_error_rate = p_hat;
    plan.arities.assign(k + 1, rest_arity(n_shots, a0, k));
    plan.arities[0] = a0;
    auto product = [&] {
        std::uint64_t p = 1;
        for (auto a : plan.arities) {
            p = sat_mul(p, a);
        }
        return p;
    };
    for (std::size_t i = 0; product() < n_shots; i = (i + 1) % plan.arities.size()) {
        ++plan.arities[i];
    }

    std::size_t at = min_gates;
    plan.partition.boundaries.push_back(at);
    for (std::size_t j = 0; j + 1 < k; ++j) {
        at += rem / k + (j < rem % k ? 1 : 0);
        plan.partition.boundaries.push_back(at);
    }
    plan.predicted_speedup = estimate_speedup(plan.arities, total_outcomes(plan.arities));
    return plan;
}

std::string plan_to_json(const PartitionPlan &plan) {
    nlohmann::ordered_json j;
    j["boundaries"] = plan.partition.boundaries;
    j["arities"] = plan.arities;
    j["predicted_speedup"] = plan.predicted_speedup;
    j["first_error_rate"] = plan.first_error_rate;
    return j.dump();
}

std::string profile_to_json(const CopyCostProfile &profile) {
    nlohmann::ordered_json j;
    j["gates_equivalent"] = profile.gates_equivalent;
    nlohmann::ordered_json per = nlohmann::ordered_json::object();
    for (const auto &[n, r] : profile.per_width) {
        per[std::to_string(n)] = r;
    }
    j["per_width"] = per;
    return j.dump();
}

}  // namespace tqsim
