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
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tqsim/statevector.hpp"

namespace tqsim {

/// Probability distribution over full-width bitstrings (qubit 0 rightmost). Absent keys have probability 0.
struct Distribution {
    std::uint32_t n_qubits = 0;
    std::map<std::string, double> probs;

    double operator[](const std::string &bits) const {
        auto it = probs.find(bits);
        return it == probs.end() ? 0.0 : it->second;
    }

    /// Normalized counts. Throws InvalidArgument on empty counts or mismatched key widths.
    static Distribution from_counts(const Counts &counts);
    /// Dense probability vector indexed by basis state; entries <= 0 are omitted.
    static Distribution from_probabilities(const Eigen::VectorXd &p);
    /// Uniform over all 2^n bitstrings.
    static Distribution uniform(std::uint32_t n_qubits);
    /// Exact |amplitude|^2 of a state.
    static Distribution of_state(const Statevector &s);

    /// Throws InvalidArgument unless all probabilities are >= 0, keys have width n_qubits and the sum is 1 within tol.
    void validate(double tol = 1e-9) const;
};

/// (sum_x sqrt(p(x) q(x)))^2.
double state_fidelity(const Distribution &ideal, const Distribution &output);

/// Fidelity rescaled so that the uniform distribution scores 0 and `ideal` itself scores 1.
/// Throws InvalidArgument when `ideal` is uniform.
double normalized_fidelity(const Distribution &ideal, const Distribution &output);

/// Half the L1 distance.
double tvd(const Distribution &p, const Distribution &q);

/// Per qubit (index 0 = qubit 0 = rightmost character), the fraction of outcomes whose bit differs from `reference`.
std::vector<double> qubit_error_frequency(const Counts &counts, const std::string &reference);

}  // namespace tqsim
