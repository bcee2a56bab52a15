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
#include <string>
#include <utility>
#include <vector>

#include "tqsim/circuit.hpp"

namespace tqsim {

/// Textbook QFT: H(i) and CP(pi / 2^(i - j)) from every lower qubit j, for i from n - 1 down
/// to 0, then floor(n / 2) SWAPs. `prepend_hadamards` adds an H layer first, which makes the
/// ideal output all zeros.
Circuit gen_qft(std::uint32_t n, bool prepend_hadamards = false);

/// Bernstein-Vazirani over `hidden.size()` data qubits plus an ancilla (the highest qubit).
/// The rightmost character of `hidden` belongs to qubit 0, so the data readout equals `hidden`.
Circuit gen_bv(std::uint32_t n_data, const std::string &hidden);

/// H(0) followed by CX(0, i) for i = 1..n-1.
Circuit gen_ghz(std::uint32_t n);

/// Phase estimation of CP-kernel eigenphase `phase` on `n_phase` counting qubits (0..n_phase-1)
/// and one eigenstate qubit (n_phase). Counting qubit j carries weight 2^j in the readout.
Circuit gen_qpe(std::uint32_t n_phase, double phase);

/// Max-cut QAOA: H layer; per layer CX(u,v) RZ(2 gamma)(v) CX(u,v) for each edge, then RX(2 beta) on all.
/// The width is `n_vertices`, or one past the largest edge endpoint when that is 0.
Circuit gen_qaoa_maxcut(const std::vector<std::pair<std::uint32_t, std::uint32_t>> &edges, double beta, double gamma,
                        std::uint32_t p_layers = 1, std::uint32_t n_vertices = 0);

}  // namespace tqsim
