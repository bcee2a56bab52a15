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

#include "tqsim/memory.hpp"

#include <string>

#include "tqsim/error.hpp"

namespace tqsim {

MemoryBudget::MemoryBudget(std::size_t limit_bytes, std::uint32_t max_qubits)
    : limit_(limit_bytes), max_qubits_(max_qubits) {
}

std::size_t MemoryBudget::max_live_states(std::uint32_t n_qubits) const {
    if (n_qubits >= 58) {
        return 0;
    }
    return limit_ / state_bytes(n_qubits);
}

MemoryBudget::Reservation MemoryBudget::reserve(std::size_t bytes) {
    std::size_t current = used_.load(std::memory_order_relaxed);
    do {
        if (bytes > limit_ || current > limit_ - bytes) {
            throw CapacityError("memory budget exceeded: " + std::to_string(current) + " of " +
                                std::to_string(limit_) + " bytes in use, " + std::to_string(bytes) + " requested");
        }
    } while (!used_.compare_exchange_weak(current, current + bytes, std::memory_order_relaxed));
    return Reservation(this, bytes);
}

MemoryBudget &MemoryBudget::process_default() {
    static MemoryBudget budget;
    return budget;
}

MemoryBudget::Reservation::Reservation(Reservation &&other) noexcept : owner_(other.owner_), bytes_(other.bytes_) {
    other.owner_ = nullptr;
    other.bytes_ = 0;
}

MemoryBudget::Reservation &MemoryBudget::Reservation::operator=(Reservation &&other) noexcept {
    if (this != &other) {
        release();
        owner_ = other.owner_;
        bytes_ = other.bytes_;
        other.owner_ = nullptr;
        other.bytes_ = 0;
    }
    return *this;
}

MemoryBudget::Reservation::~Reservation() {
    release();
}

void MemoryBudget::Reservation::release() noexcept {
    if (owner_) {
        owner_->used_.fetch_sub(bytes_, std::memory_order_relaxed);
        owner_ = nullptr;
        bytes_ = 0;
    }
}

}  // namespace tqsim
