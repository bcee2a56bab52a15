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

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "tqsim/circuit.hpp"
#include "tqsim/error.hpp"
#include "tqsim/memory.hpp"
#include "tqsim/random.hpp"

namespace tqsim {

/// Bitstring -> number of samples. Bitstrings are full width with qubit 0 rightmost.
using Counts = std::map<std::string, std::uint64_t>;

/// Renders a basis-state index as a bitstring of `n_qubits` characters, qubit 0 rightmost.
std::string to_bitstring(std::uint64_t index, std::uint32_t n_qubits);
/// Inverse of to_bitstring. Throws InvalidArgument on characters other than '0'/'1'.
std::uint64_t from_bitstring(const std::string &bits);

/// Dense 2^n amplitude vector whose storage is accounted against a MemoryBudget.
///
/// Qubit q is bit q of the basis-state index (little-endian). Copying reserves a new slice of
/// the budget and throws CapacityError when it does not fit.
template <typename Real>
class BasicStatevector {
   public:
    using Scalar = std::complex<Real>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    BasicStatevector(std::uint32_t n_qubits, MemoryBudget &budget)
        : budget_(&budget), reservation_(reserve_for(n_qubits, budget)), n_qubits_(n_qubits) {
        amps_.setZero(Eigen::Index{1} << n_qubits);
        amps_[0] = Scalar(1);
    }

    BasicStatevector(Vector amplitudes, MemoryBudget &budget)
        : budget_(&budget), reservation_(reserve_for(width_of(amplitudes.size()), budget)),
          n_qubits_(width_of(amplitudes.size())), amps_(std::move(amplitudes)) {
    }

    BasicStatevector(const BasicStatevector &other)
        : budget_(other.budget_), reservation_(budget_->reserve(other.reservation_.bytes())),
          n_qubits_(other.n_qubits_), amps_(other.amps_) {
    }
    BasicStatevector &operator=(const BasicStatevector &other) {
        if (this != &other) {
            BasicStatevector tmp(other);
            *this = std::move(tmp);
        }
        return *this;
    }
    BasicStatevector(BasicStatevector &&) noexcept = default;
    BasicStatevector &operator=(BasicStatevector &&) noexcept = default;

    std::uint32_t n_qubits() const {
        return n_qubits_;
    }
    Eigen::Index dim() const {
        return amps_.size();
    }
    const Vector &amplitudes() const {
        return amps_;
    }
    Vector &amplitudes() {
        return amps_;
    }
    MemoryBudget &budget() const {
        return *budget_;
    }

   private:
    static std::uint32_t width_of(Eigen::Index size) {
        if (size < 2 || (size & (size - 1)) != 0) {
            throw InvalidArgument("statevector length must be a power of two >= 2");
        }
        std::uint32_t n = 0;
        while ((Eigen::Index{1} << n) < size) {
            ++n;
        }
        return n;
    }

    static MemoryBudget::Reservation reserve_for(std::uint32_t n_qubits, MemoryBudget &budget) {
        if (n_qubits == 0) {
            throw InvalidArgument("statevector needs at least one qubit");
        }
        if (n_qubits > budget.max_qubits()) {
            throw CapacityError(std::to_string(n_qubits) + " qubits exceeds the configured maximum of " +
                                std::to_string(budget.max_qubits()));
        }
        return budget.reserve(sizeof(Scalar) << n_qubits);
    }

    MemoryBudget *budget_;
    MemoryBudget::Reservation reservation_;
    std::uint32_t n_qubits_;
    Vector amps_;
};

using Statevector = BasicStatevector<double>;

/// |0...0> on `n_qubits` qubits.
inline Statevector init_state(std::uint32_t n_qubits, MemoryBudget &budget = MemoryBudget::process_default()) {
    return Statevector(n_qubits, budget);
}

template <typename Real>
BasicStatevector<Real> copy_state(const BasicStatevector<Real> &s) {
    return s;
}

template <typename Real>
Real squared_norm(const BasicStatevector<Real> &s) {
    return s.amplitudes().squaredNorm();
}

/// Applies a 2x2 operator to `qubit` by amplitude-pair updates with stride 2^qubit.
template <typename Real, typename Derived>
void apply_1q(BasicStatevector<Real> &s, std::uint32_t qubit, const Eigen::MatrixBase<Derived> &m) {
    using Scalar = std::complex<Real>;
    const Scalar m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    Scalar *a = s.amplitudes().data();
    const std::uint64_t dim = static_cast<std::uint64_t>(s.dim());
    const std::uint64_t stride = std::uint64_t{1} << qubit;
    if (m01 == Scalar(0) && m10 == Scalar(0)) {
        for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
            for (std::uint64_t j = base; j < base + stride; ++j) {
                a[j] *= m00;
                a[j + stride] *= m11;
            }
        }
        return;
    }
    for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
        for (std::uint64_t j = base; j < base + stride; ++j) {
            const Scalar x = a[j], y = a[j + stride];
            a[j] = m00 * x + m01 * y;
            a[j + stride] = m10 * x + m11 * y;
        }
    }
}

/// Applies a 4x4 operator whose local basis index is `bit(q0) + 2 * bit(q1)`.
template <typename Real, typename Derived>
void apply_2q(BasicStatevector<Real> &s, std::uint32_t q0, std::uint32_t q1, const Eigen::MatrixBase<Derived> &m) {
    using Scalar = std::complex<Real>;
    Scalar *a = s.amplitudes().data();
    const std::uint64_t quarter = static_cast<std::uint64_t>(s.dim()) >> 2;
    const std::uint64_t b0 = std::uint64_t{1} << q0, b1 = std::uint64_t{1} << q1;
    const std::uint32_t lo = std::min(q0, q1), hi = std::max(q0, q1);
    const std::uint64_t lo_mask = (std::uint64_t{1} << lo) - 1;
    const std::uint64_t hi_mask = (std::uint64_t{1} << hi) - 1;

    // perm[r] = c when row r holds a single unit entry at column c, else -1.
    int perm[4];
    bool permutation = true, diagonal = true;
    for (int r = 0; r < 4; ++r) {
        perm[r] = -1;
        int nonzero = 0;
        for (int c = 0; c < 4; ++c) {
            if (m(r, c) != Scalar(0)) {
                ++nonzero;
                perm[r] = c;
                diagonal = diagonal && r == c;
            }
        }
        permutation = permutation && nonzero == 1 && m(r, perm[r]) == Scalar(1);
    }

    auto index = [&](std::uint64_t k) {
        // Insert zero bits at positions lo and hi.
        std::uint64_t i = ((k & ~lo_mask) << 1) | (k & lo_mask);
        return ((i & ~hi_mask) << 1) | (i & hi_mask);
    };
    const std::uint64_t offset[4] = {0, b0, b1, b0 | b1};

    if (diagonal) {
        int rows[4], n_rows = 0;
        for (int r = 0; r < 4; ++r) {
            if (m(r, r) != Scalar(1)) {
                rows[n_rows++] = r;
            }
        }
        for (std::uint64_t k = 0; k < quarter && n_rows > 0; ++k) {
            const std::uint64_t i = index(k);
            for (int t = 0; t < n_rows; ++t) {
                a[i | offset[rows[t]]] *= m(rows[t], rows[t]);
            }
        }
        return;
    }
    if (permutation) {
        for (std::uint64_t k = 0; k < quarter; ++k) {
            const std::uint64_t i = index(k);
            const Scalar v[4] = {a[i], a[i | b0], a[i | b1], a[i | b0 | b1]};
            for (int r = 0; r < 4; ++r) {
                a[i | offset[r]] = v[perm[r]];
            }
        }
        return;
    }
    for (std::uint64_t k = 0; k < quarter; ++k) {
        const std::uint64_t i = index(k);
        const Scalar v[4] = {a[i], a[i | b0], a[i | b1], a[i | b0 | b1]};
        for (int r = 0; r < 4; ++r) {
            a[i | offset[r]] = m(r, 0) * v[0] + m(r, 1) * v[1] + m(r, 2) * v[2] + m(r, 3) * v[3];
        }
    }
}

template <typename Real>
void apply_gate(BasicStatevector<Real> &s, const Gate &g) {
    for (auto q : g.qubits) {
        if (q >= s.n_qubits()) {
            throw InvalidArgument("qubit index " + std::to_string(q) + " out of range for " +
                                  std::to_string(s.n_qubits()) + "-qubit state");
        }
    }
    const GateMatrix<Real> m = gate_matrix<Real>(g.kind);
    if (g.qubits.size() == 1) {
        apply_1q(s, g.qubits[0], m.template topLeftCorner<2, 2>());
    } else {
        apply_2q(s, g.qubits[0], g.qubits[1], m.template topLeftCorner<4, 4>());
    }
}

template <typename Real>
void apply_circuit(BasicStatevector<Real> &s, const Circuit &c) {
    if (c.n_qubits() != s.n_qubits()) {
        throw InvalidArgument("circuit width does not match state width");
    }
    for (const auto &g : c.gates()) {
        apply_gate(s, g);
    }
}

/// |amplitude|^2 for every basis state.
template <typename Real>
Eigen::VectorX<Real> probabilities(const BasicStatevector<Real> &s) {
    return s.amplitudes().cwiseAbs2();
}

/// Draws one basis-state index with probability |amplitude|^2, consuming one uniform draw.
template <typename Real>
std::uint64_t sample_index(const BasicStatevector<Real> &s, RandomStream &rng) {
    const Real r = static_cast<Real>(rng.uniform()) * s.amplitudes().squaredNorm();
    const auto *a = s.amplitudes().data();
    const std::uint64_t dim = static_cast<std::uint64_t>(s.dim());
    Real acc = 0;
    std::uint64_t last_nonzero = 0;
    for (std::uint64_t i = 0; i < dim; ++i) {
        const Real p = std::norm(a[i]);
        if (p > 0) {
            acc += p;
            last_nonzero = i;
            if (r < acc) {
                return i;
            }
        }
    }
    // Rounding left r at or beyond the accumulated total.
    return last_nonzero;
}

template <typename Real>
std::string sample_outcome(const BasicStatevector<Real> &s, RandomStream &rng) {
    return to_bitstring(sample_index(s, rng), s.n_qubits());
}

}  // namespace tqsim
