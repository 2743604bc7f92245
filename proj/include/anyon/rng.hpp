// Copyright 2026 The Anyonic Interferometry Authors
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

namespace anyon {

/// SplitMix64 output function (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of trial `index` in a batch started from `seed`:
///
///     derive_seed(seed, i) = splitmix64(seed ^ splitmix64(i))
///
/// Trials are therefore independent of how a batch is split across workers.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index));
}

/// Counter-based generator. The k-th draw (k = 0, 1, ...) is
/// splitmix64(key + k * 0x9E3779B97F4A7C15), so any draw can be reproduced
/// from (key, k) alone.
class CounterRng {
   public:
    explicit constexpr CounterRng(std::uint64_t key) : key_(key) {
    }

    constexpr std::uint64_t next() {
        return splitmix64(key_ + 0x9E3779B97F4A7C15ULL * counter_++);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    constexpr std::uint64_t key() const {
        return key_;
    }
    constexpr std::uint64_t counter() const {
        return counter_;
    }

   private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace anyon
