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

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace tqsim {

enum class GateTag : std::uint8_t { X, Y, Z, H, S, SDG, T, TDG, RX, RY, RZ, U, CX, CZ, SWAP, CP };

inline constexpr std::array kAllGateTags = {
    GateTag::X,  GateTag::Y,  GateTag::Z,  GateTag::H,  GateTag::S,  GateTag::SDG,
    GateTag::T,  GateTag::TDG, GateTag::RX, GateTag::RY, GateTag::RZ, GateTag::U,
    GateTag::CX, GateTag::CZ, GateTag::SWAP, GateTag::CP,
};

/// Number of real angle parameters the tag takes.
int param_count(GateTag tag);
/// Number of qubits the tag acts on (1 or 2).
int qubit_count(GateTag tag);
/// Lower-case OpenQASM mnemonic ("x", "cx", "cp", ...).
std::string_view gate_name(GateTag tag);
std::optional<GateTag> gate_tag_from_name(std::string_view name);

/// A gate tag with its bound angles. Construction validates the parameter count.
class GateKind {
   public:
    explicit GateKind(GateTag tag, std::vector<double> params = {});

    GateTag tag() const {
        return tag_;
    }
    std::span<const double> params() const {
        return params_;
    }

    bool operator==(const GateKind &) const = default;

   private:
    GateTag tag_;
    std::vector<double> params_;
};

struct Gate {
    GateKind kind;
    /// For two-qubit gates qubits[0] is the control (first QASM operand).
    std::vector<std::uint32_t> qubits;

    Gate(GateKind kind, std::vector<std::uint32_t> qubits);

    bool operator==(const Gate &) const = default;
};

/// Gate matrix with a fixed 4x4 upper bound so no heap allocation occurs.
template <typename Real>
using GateMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 4, 4>;

/// Standard unitary for a gate kind.
///
/// Two-qubit matrices act on the local basis index `bit(qubits[0]) + 2 * bit(qubits[1])`,
/// consistent with little-endian qubit ordering: the control is the low local bit.
template <typename Real = double>
GateMatrix<Real> gate_matrix(const GateKind &kind);

extern template GateMatrix<double> gate_matrix<double>(const GateKind &);
extern template GateMatrix<float> gate_matrix<float>(const GateKind &);

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived> &m, double tol = 1e-12) {
    if (m.rows() != m.cols()) {
        return false;
    }
    auto product = (m.adjoint() * m).eval();
    using Plain = typename Derived::PlainObject;
    return (product - Plain::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

/// Ordered gate list over `n_qubits` qubits, with an optional terminal full measurement.
class Circuit {
   public:
    Circuit() = default;
    explicit Circuit(std::uint32_t n_qubits, std::vector<Gate> gates = {}, bool measured = false);

    std::uint32_t n_qubits() const {
        return n_qubits_;
    }
    const std::vector<Gate> &gates() const {
        return gates_;
    }
    std::size_t size() const {
        return gates_.size();
    }
    bool empty() const {
        return gates_.empty();
    }
    bool measured() const {
        return measured_;
    }

    /// Appends a gate after validating its qubit indices.
    Circuit &append(Gate gate);
    Circuit &append(GateTag tag, std::vector<std::uint32_t> qubits, std::vector<double> params = {});
    void set_measured(bool measured) {
        measured_ = measured;
    }

    bool operator==(const Circuit &) const = default;

   private:
    void check(const Gate &gate) const;

    std::uint32_t n_qubits_ = 0;
    std::vector<Gate> gates_;
    bool measured_ = false;
};

/// Strictly increasing interior cut points splitting a gate list into contiguous slices.
struct Partition {
    std::vector<std::size_t> boundaries;

    std::size_t slice_count() const {
        return boundaries.size() + 1;
    }
    bool operator==(const Partition &) const = default;
};

/// Throws InvalidArgument unless every boundary lies strictly inside (0, gate_count) and increases.
void validate_partition(const Partition &p, std::size_t gate_count);

/// Splits `c` into `p.slice_count()` subcircuits of the same width. Only the last keeps the measured flag.
std::vector<Circuit> slice(const Circuit &c, const Partition &p);

/// Concatenates the gate lists of same-width circuits.
Circuit concatenate(std::span<const Circuit> parts);

}  // namespace tqsim
