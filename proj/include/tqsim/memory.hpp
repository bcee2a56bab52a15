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

#include <atomic>
#include <cstddef>
#include <cstdint>

namespace tqsim {

/// Cap on the total bytes of live simulator states, shared by every state created against it.
///
/// Reservations are taken with an atomic counter, so states may be created and destroyed
/// from several worker threads at once.
class MemoryBudget {
   public:
    static constexpr std::size_t kDefaultBytes = std::size_t{4} << 30;
    static constexpr std::uint32_t kDefaultMaxQubits = 26;

    explicit MemoryBudget(std::size_t limit_bytes = kDefaultBytes, std::uint32_t max_qubits = kDefaultMaxQubits);

    MemoryBudget(const MemoryBudget &) = delete;
    MemoryBudget &operator=(const MemoryBudget &) = delete;

    std::size_t limit_bytes() const {
        return limit_;
    }
    std::uint32_t max_qubits() const {
        return max_qubits_;
    }
    std::size_t used_bytes() const {
        return used_.load(std::memory_order_relaxed);
    }

    /// How many double-precision n-qubit statevectors fit in the budget.
    std::size_t max_live_states(std::uint32_t n_qubits) const;

    class Reservation {
       public:
        Reservation() = default;
        Reservation(Reservation &&other) noexcept;
        Reservation &operator=(Reservation &&other) noexcept;
        Reservation(const Reservation &) = delete;
        Reservation &operator=(const Reservation &) = delete;
        ~Reservation();

        std::size_t bytes() const {
            return bytes_;
        }

       private:
        friend class MemoryBudget;
        Reservation(MemoryBudget *owner, std::size_t bytes) : owner_(owner), bytes_(bytes) {
        }
        void release() noexcept;

        MemoryBudget *owner_ = nullptr;
        std::size_t bytes_ = 0;
    };

    /// Throws CapacityError if `bytes` more would exceed the limit.
    Reservation reserve(std::size_t bytes);

    /// Shared default budget (4 GiB, 26 qubits).
    static MemoryBudget &process_default();

   private:
    std::size_t limit_;
    std::uint32_t max_qubits_;
    std::atomic<std::size_t> used_{0};
};

/// Bytes taken by a double-precision n-qubit statevector.
constexpr std::size_t state_bytes(std::uint32_t n_qubits) {
    return std::size_t{16} << n_qubits;
}

}  // namespace tqsim
