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

#include "tqsim/scheduler.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <unordered_map>

namespace tqsim {

namespace {

constexpr std::uint64_t kMaxOutcomes = std::uint64_t{1} << 48;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > kMaxOutcomes / a) {
        throw InvalidArgument("arity product exceeds 2^48 outcomes");
    }
    return a * b;
}

// Gate with its matrix and noise sets resolved once per run.
struct CompiledGate {
    std::uint32_t q0 = 0;
    std::uint32_t q1 = 0;
    bool two_qubit = false;
    Eigen::Matrix2cd m2;
    Eigen::Matrix4cd m4;
    const std::vector<KrausSet> *noise = nullptr;
};

std::vector<CompiledGate> compile(const Circuit &c, const NoiseModel &m) {
    std::vector<CompiledGate> out;
    out.reserve(c.size());
    for (const auto &g : c.gates()) {
        CompiledGate cg;
        const auto u = gate_matrix<double>(g.kind);
        cg.q0 = g.qubits[0];
        if (g.qubits.size() == 2) {
            cg.two_qubit = true;
            cg.q1 = g.qubits[1];
            cg.m4 = u;
        } else {
            cg.m2 = u;
        }
        const auto &sets = m.location_channels(g.kind.tag());
        cg.noise = sets.empty() ? nullptr : &sets;
        out.push_back(std::move(cg));
    }
    return out;
}

using Tally = std::unordered_map<std::uint64_t, std::uint64_t>;

struct WorkerStats {
    Tally tally;
    std::uint64_t nodes = 0;
    std::uint64_t copies = 0;
};

class TreeRunner {
   public:
    TreeRunner(const TreeStructure &t, const NoiseModel &m, std::uint64_t seed)
        : arities_(t.arities), readout_(m.readout()), seed_(seed), n_qubits_(t.slices.front().n_qubits()) {
        for (const auto &s : t.slices) {
            slices_.push_back(compile(s, m));
        }
    }

    std::size_t depth() const {
        return arities_.size();
    }

    // Runs slice `d` on `s` for the node reached by `path`, then samples if it is a leaf.
    void run_node(Statevector &s, std::size_t d, const std::vector<std::uint32_t> &path, WorkerStats &w) const {
        RandomStream rng(path_seed(seed_, path));
        for (const auto &g : slices_[d]) {
            if (g.two_qubit) {
                apply_2q(s, g.q0, g.q1, g.m4);
            } else {
                apply_1q(s, g.q0, g.m2);
            }
            if (g.noise != nullptr) {
                for (int i = 0; i < (g.two_qubit ? 2 : 1); ++i) {
                    const std::uint32_t q = i == 0 ? g.q0 : g.q1;
                    for (const auto &k : *g.noise) {
                        trajectory_noise_step(s, q, k, rng);
                    }
                }
            }
        }
        ++w.nodes;
        if (d + 1 == depth()) {
            std::uint64_t idx = sample_index(s, rng);
            if (readout_) {
                idx = apply_readout_error(idx, n_qubits_, *readout_, rng);
            }
            ++w.tally[idx];
        }
    }

    // Expands the children of a node whose state (after slices 0..d-1) is `parent`.
    void expand(Statevector &&parent, std::size_t d, std::vector<std::uint32_t> &path, WorkerStats &w) const {
        const std::uint64_t arity = arities_[d];
        for (std::uint64_t c = 0; c < arity; ++c) {
            const bool last = c + 1 == arity;
            Statevector child = last ? std::move(parent) : Statevector(parent);
            if (!last) {
                ++w.copies;
            }
            path.push_back(static_cast<std::uint32_t>(c));
            run_node(child, d, path, w);
            if (d + 1 < depth()) {
                expand(std::move(child), d + 1, path, w);
            }
            path.pop_back();
        }
    }

    const std::vector<std::uint64_t> &arities() const {
        return arities_;
    }

   private:
    std::vector<std::uint64_t> arities_;
    std::vector<std::vector<CompiledGate>> slices_;
    std::optional<Readout> readout_;
    std::uint64_t seed_;
    std::uint32_t n_qubits_;
};

struct FrontierNode {
    Statevector state;
    std::vector<std::uint32_t> path;
};

// Smallest depth s whose (node, child) task count reaches 8 per thread.
std::size_t split_depth(const std::vector<std::uint64_t> &arities, unsigned threads) {
    std::uint64_t tasks = 1;
    for (std::size_t s = 0; s < arities.size(); ++s) {
        tasks *= arities[s];
        if (tasks >= std::uint64_t{8} * threads) {
            return s;
        }
    }
    return arities.size() - 1;
}

std::size_t frontier_size(const std::vector<std::uint64_t> &arities, std::size_t s) {
    std::size_t f = 1;
    for (std::size_t j = 0; j < s; ++j) {
        f *= arities[j];
    }
    return f;
}

void run_parallel(const TreeRunner &runner, Statevector &&root, unsigned threads, std::size_t s,
                  std::vector<WorkerStats> &stats) {
    const auto &arities = runner.arities();
    // Breadth-first to depth s on the calling thread.
    std::vector<FrontierNode> frontier;
    frontier.push_back({std::move(root), {}});
    for (std::size_t d = 0; d < s; ++d) {
        std::vector<FrontierNode> next;
        next.reserve(frontier.size() * arities[d]);
        for (auto &node : frontier) {
            for (std::uint64_t c = 0; c < arities[d]; ++c) {
                const bool last = c + 1 == arities[d];
                FrontierNode child{last ? std::move(node.state) : Statevector(node.state), node.path};
                if (!last) {
                    ++stats[0].copies;
                }
                child.path.push_back(static_cast<std::uint32_t>(c));
                runner.run_node(child.state, d, child.path, stats[0]);
                next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }

    const std::uint64_t arity = arities[s];
    const std::uint64_t n_tasks = frontier.size() * arity;
    std::atomic<std::uint64_t> next_task{0};
    // The last task to claim a frontier node takes its state instead of copying it.
    std::vector<std::mutex> locks(frontier.size());
    std::vector<std::uint64_t> remaining(frontier.size(), arity);
    std::vector<std::exception_ptr> errors(threads);
    auto worker = [&](unsigned id) {
        try {
            std::vector<std::uint32_t> path;
            for (;;) {
                const std::uint64_t t = next_task.fetch_add(1, std::memory_order_relaxed);
                if (t >= n_tasks) {
                    break;
                }
                auto &node = frontier[t / arity];
                std::optional<Statevector> child;
                {
                    const std::lock_guard lock(locks[t / arity]);
                    if (--remaining[t / arity] == 0) {
                        child.emplace(std::move(node.state));
                    } else {
                        child.emplace(node.state);
                        ++stats[id].copies;
                    }
                }
                path = node.path;
                path.push_back(static_cast<std::uint32_t>(t % arity));
                runner.run_node(*child, s, path, stats[id]);
                if (s + 1 < runner.depth()) {
                    runner.expand(std::move(*child), s + 1, path, stats[id]);
                }
            }
        } catch (...) {
            errors[id] = std::current_exception();
            next_task.store(n_tasks, std::memory_order_relaxed);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned id = 1; id < threads; ++id) {
        pool.emplace_back(worker, id);
    }
    worker(0);
    for (auto &th : pool) {
        th.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace

void validate(const TreeStructure &t) {
    if (t.arities.empty()) {
        throw InvalidArgument("tree needs at least one slice");
    }
    if (t.arities.size() != t.slices.size()) {
        throw InvalidArgument("tree has " + std::to_string(t.arities.size()) + " arities but " +
                              std::to_string(t.slices.size()) + " slices");
    }
    for (auto a : t.arities) {
        if (a == 0) {
            throw InvalidArgument("arities must be positive");
        }
        if (a > std::numeric_limits<std::uint32_t>::max()) {
            throw InvalidArgument("arity exceeds 2^32 - 1");
        }
    }
    for (const auto &s : t.slices) {
        if (s.n_qubits() != t.slices.front().n_qubits()) {
            throw InvalidArgument("tree slices differ in width");
        }
    }
    total_outcomes(t.arities);
}

std::uint64_t instances_of(std::span<const std::uint64_t> arities, std::size_t i) {
    if (i == 0 || i > arities.size()) {
        throw InvalidArgument("subcircuit index " + std::to_string(i) + " outside [1, " +
                              std::to_string(arities.size()) + "]");
    }
    std::uint64_t n = 1;
    for (std::size_t j = 0; j < i; ++j) {
        n = checked_mul(n, arities[j]);
    }
    return n;
}

std::uint64_t total_outcomes(std::span<const std::uint64_t> arities) {
    std::uint64_t n = 1;
    for (auto a : arities) {
        n = checked_mul(n, a);
    }
    return n;
}

std::uint64_t total_nodes(std::span<const std::uint64_t> arities) {
    std::uint64_t n = 1;
    for (std::size_t i = 1; i <= arities.size(); ++i) {
        n += instances_of(arities, i);
    }
    return n;
}

double estimate_speedup(std::span<const std::uint64_t> arities, std::uint64_t n_baseline) {
    if (arities.empty()) {
        throw InvalidArgument("tree needs at least one slice");
    }
    const double executed = static_cast<double>(total_nodes(arities) - 1);
    return static_cast<double>(arities.size()) * static_cast<double>(n_baseline) / executed;
}

TreeRunResult execute_tree(const TreeStructure &t, const NoiseModel &m, std::uint64_t master_seed,
                           const ExecutionOptions &options) {
    validate(t);
    MemoryBudget &budget = options.budget != nullptr ? *options.budget : MemoryBudget::process_default();
    const auto start = std::chrono::steady_clock::now();

    const TreeRunner runner(t, m, master_seed);
    const std::uint32_t n = t.slices.front().n_qubits();
    const std::size_t k = t.arities.size();

    unsigned threads = std::max(1u, options.threads);
    std::size_t s = 0;
    if (threads > 1) {
        // Frontier states plus one root-to-leaf chain per worker must fit next to what is already live.
        const std::size_t free_states = (budget.limit_bytes() - std::min(budget.limit_bytes(), budget.used_bytes())) /
                                        state_bytes(n);
        for (; threads > 1; --threads) {
            s = split_depth(t.arities, threads);
            const std::size_t frontier = frontier_size(t.arities, s);
            if (frontier + std::size_t{threads} * (k - s + 1) <= free_states) {
                break;
            }
        }
    }

    std::vector<WorkerStats> stats(threads);
    Statevector root(n, budget);
    if (threads == 1) {
        std::vector<std::uint32_t> path;
        runner.expand(std::move(root), 0, path, stats[0]);
    } else {
        run_parallel(runner, std::move(root), threads, s, stats);
    }

    TreeRunResult result;
    result.seed = master_seed;
    Tally merged;
    for (auto &w : stats) {
        result.nodes_executed += w.nodes;
        result.states_copied += w.copies;
        for (const auto &[idx, c] : w.tally) {
            merged[idx] += c;
        }
    }
    for (const auto &[idx, c] : merged) {
        result.counts.emplace(to_bitstring(idx, n), c);
    }
    result.wall_time = std::chrono::steady_clock::now() - start;
    return result;
}

TreeRunResult execute_baseline(const Circuit &c, const NoiseModel &m, std::uint64_t shots, std::uint64_t master_seed,
                               const ExecutionOptions &options) {
    if (shots == 0) {
        throw InvalidArgument("shots must be at least 1");
    }
    TreeStructure t{{shots}, {c}};
    return execute_tree(t, m, master_seed, options);
}

}  // namespace tqsim
