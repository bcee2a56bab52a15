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
#include <limits>
#include <span>

namespace tqsim {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Seed of the tree node reached from the root by `path` (child index per depth).
///
///     h = mix64(master + 0x9e3779b97f4a7c15)
///     for depth d, child c:  h = mix64(h ^ mix64(((d + 1) << 32) | c))
///
/// The result only depends on the path, never on traversal order or worker count.
constexpr std::uint64_t path_seed(std::uint64_t master_seed, std::span<const std::uint32_t> path) {
    std::uint64_t h = mix64(master_seed + 0x9e3779b97f4a7c15ull);
    for (std::size_t d = 0; d < path.size(); ++d) {
        h = mix64(h ^ mix64(((static_cast<std::uint64_t>(d) + 1) << 32) | path[d]));
    }
    return h;
}

/// xoshiro256** stream, state filled from a SplitMix64 sequence. Satisfies UniformRandomBitGenerator.
class RandomStream {
   public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto &s : s_) {
            x += 0x9e3779b97f4a7c15ull;
            s = mix64(x);
        }
    }

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

   private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

}  // namespace tqsim
