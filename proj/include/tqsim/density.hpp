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
#include <optional>
#include <span>

#include <Eigen/Dense>

#include "tqsim/circuit.hpp"
#include "tqsim/metrics.hpp"
#include "tqsim/noise.hpp"

namespace tqsim {

inline constexpr std::uint32_t kDensityQubitCap = 6;

/// Exact mixed state on at most kDensityQubitCap qubits; used as a reference for trajectory results.
struct DensityMatrix {
    std::uint32_t n_qubits = 0;
    Eigen::MatrixXcd rho;

    /// max |rho - rho^dagger|.
    double hermiticity_error() const;
    std::complex<double> trace() const {
        return rho.trace();
    }
    double min_eigenvalue() const;
};

/// Expands a 2x2 or 4x4 local operator to the full 2^n space. For two qubits the local index is
/// `bit(qubits[0]) + 2 * bit(qubits[1])`, matching gate_matrix.
Eigen::MatrixXcd embed_operator(const Eigen::MatrixXcd &local, std::span<const std::uint32_t> qubits,
                                std::uint32_t n_qubits);

/// Full 2^n x 2^n unitary of a noiseless circuit (product of embedded gate matrices).
Eigen::MatrixXcd circuit_unitary(const Circuit &c, std::uint32_t cap = kDensityQubitCap);

/// Evolves |0..0><0..0| through the circuit: per gate, U rho U^dagger and then every after-gate
/// channel sum_i K_i rho K_i^dagger on each touched qubit. Throws CapacityError above `cap` qubits.
DensityMatrix evolve_density(const Circuit &c, const NoiseModel &m, std::uint32_t cap = kDensityQubitCap);

/// Diagonal of rho, then independent per-bit readout flips folded in exactly when given.
Distribution output_distribution(const DensityMatrix &rho, const std::optional<Readout> &readout = std::nullopt);

}  // namespace tqsim
