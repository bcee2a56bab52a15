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

#include "tqsim/statevector.hpp"

namespace tqsim {

std::string to_bitstring(std::uint64_t index, std::uint32_t n_qubits) {
    std::string bits(n_qubits, '0');
    for (std::uint32_t q = 0; q < n_qubits; ++q) {
        if ((index >> q) & 1) {
            bits[n_qubits - 1 - q] = '1';
        }
    }
    return bits;
}

std::uint64_t from_bitstring(const std::string &bits) {
    if (bits.empty() || bits.size() > 64) {
        throw InvalidArgument("bitstring must have 1..64 characters");
    }
    std::uint64_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw InvalidArgument("bitstring '" + bits + "' contains a character other than 0/1");
        }
        index = (index << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return index;
}

}  // namespace tqsim
