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

#include "tqsim/benchgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tqsim/error.hpp"

namespace tqsim {

namespace {

void append_qft(Circuit &c, std::uint32_t offset, std::uint32_t n) {
    for (std::uint32_t i = n; i-- > 0;) {
        c.append(GateTag::H, {offset + i});
        for (std::uint32_t j = i; j-- > 0;) {
            c.append(GateTag::CP, {offset + j, offset + i}, {std::numbers::pi / std::ldexp(1.0, static_cast<int>(i - j))});
        }
    }
    for (std::uint32_t i = 0; i < n / 2; ++i) {
        c.append(GateTag::SWAP, {offset + i, offset + n - 1 - i});
    }
}

// Reversed QFT gate list with negated angles.
void append_inverse_qft(Circuit &c, std::uint32_t n) {
    Circuit fwd(c.n_qubits());
    append_qft(fwd, 0, n);
    for (auto it = fwd.gates().rbegin(); it != fwd.gates().rend(); ++it) {
        std::vector<double> params(it->kind.params().begin(), it->kind.params().end());
        for (auto &p : params) {
            p = -p;
        }
        c.append(Gate(GateKind(it->kind.tag(), std::move(params)), it->qubits));
    }
}

}  // namespace

Circuit gen_qft(std::uint32_t n, bool prepend_hadamards) {
    if (n == 0) {
        throw InvalidArgument("qft needs at least one qubit");
    }
    Circuit c(n);
    if (prepend_hadamards) {
        for (std::uint32_t q = 0; q < n; ++q) {
            c.append(GateTag::H, {q});
        }
    }
    append_qft(c, 0, n);
    c.set_measured(true);
    return c;
}

Circuit gen_bv(std::uint32_t n_data, const std::string &hidden) {
    if (n_data == 0 || hidden.size() != n_data) {
        throw InvalidArgument("hidden string must have exactly n_data characters");
    }
    if (hidden.find_first_not_of("01") != std::string::npos) {
        throw InvalidArgument("hidden string must contain only '0' and '1'");
    }
    const std::uint32_t anc = n_data;
    Circuit c(n_data + 1);
    c.append(GateTag::X, {anc});
    for (std::uint32_t q = 0; q <= anc; ++q) {
        c.append(GateTag::H, {q});
    }
    for (std::uint32_t q = 0; q < n_data; ++q) {
        if (hidden[n_data - 1 - q] == '1') {
            c.append(GateTag::CX, {q, anc});
        }
    }
    for (std::uint32_t q = 0; q < n_data; ++q) {
        c.append(GateTag::H, {q});
    }
    c.set_measured(true);
    return c;
}

Circuit gen_ghz(std::uint32_t n) {
    if (n < 2) {
        throw InvalidArgument("ghz needs at least two qubits");
    }
    Circuit c(n);
    c.append(GateTag::H, {0});
    for (std::uint32_t q = 1; q < n; ++q) {
        c.append(GateTag::CX, {0, q});
    }
    c.set_measured(true);
    return c;
}

Circuit gen_qpe(std::uint32_t n_phase, double phase) {
    if (n_phase == 0) {
        throw InvalidArgument("qpe needs at least one counting qubit");
    }
    if (!(phase >= 0 && phase < 1)) {
        throw InvalidArgument("phase must lie in [0, 1)");
    }
    const std::uint32_t eig = n_phase;
    Circuit c(n_phase + 1);
    c.append(GateTag::X, {eig});
    for (std::uint32_t j = 0; j < n_phase; ++j) {
        c.append(GateTag::H, {j});
    }
    for (std::uint32_t j = 0; j < n_phase; ++j) {
        const double angle = std::remainder(2 * std::numbers::pi * phase * std::ldexp(1.0, static_cast<int>(j)),
                                            2 * std::numbers::pi);
        c.append(GateTag::CP, {j, eig}, {angle});
    }
    append_inverse_qft(c, n_phase);
    c.set_measured(true);
    return c;
}

Circuit gen_qaoa_maxcut(const std::vector<std::pair<std::uint32_t, std::uint32_t>> &edges, double beta, double gamma,
                        std::uint32_t p_layers, std::uint32_t n_vertices) {
    std::uint32_t n = n_vertices;
    for (const auto &[u, v] : edges) {
        if (u == v) {
            throw InvalidArgument("self-loop edge on vertex " + std::to_string(u));
        }
        if (n_vertices != 0 && std::max(u, v) >= n_vertices) {
            throw InvalidArgument("edge endpoint outside [0, " + std::to_string(n_vertices) + ")");
        }
        n = std::max({n, u + 1, v + 1});
    }
    if (n == 0) {
        throw InvalidArgument("qaoa needs at least one vertex");
    }
    Circuit c(n);
    for (std::uint32_t q = 0; q < n; ++q) {
        c.append(GateTag::H, {q});
    }
    for (std::uint32_t layer = 0; layer < p_layers; ++layer) {
        for (const auto &[u, v] : edges) {
            c.append(GateTag::CX, {u, v});
            c.append(GateTag::RZ, {v}, {2 * gamma});
            c.append(GateTag::CX, {u, v});
        }
        for (std::uint32_t q = 0; q < n; ++q) {
            c.append(GateTag::RX, {q}, {2 * beta});
        }
    }
    c.set_measured(true);
    return c;
}

}  // namespace tqsim
