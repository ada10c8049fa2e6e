/*
   Copyright 2026 The lamplighter-subgroups Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

/**
 * @file random.hpp
 * @brief SplitMix64, the single pseudo-random generator used for sampling.
 *
 * SplitMix64 (Steele, Lea, Flood 2014): state += 0x9E3779B97F4A7C15, output
 * is the state passed through the finalizer
 *   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
 *   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
 *   z =  z ^ (z >> 31).
 * Independent streams for (seed, a, b) come from derive_seed.
 */

#include <cstdint>

#include "errors.hpp"

namespace lamplighter {

class SplitMix64 {
   public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, bound) by rejection of the biased tail.
    std::uint64_t uniform(std::uint64_t bound) {
        if (bound == 0) throw std::domain_error("uniform bound must be positive");
        const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = next();
            if (r >= limit) return r % bound;
        }
    }

   private:
    std::uint64_t state_;
};

/// Seed of the stream labelled (a, b) under a master seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept {
    SplitMix64 g(seed ^ (a * 0xD1B54A32D192ED03ULL));
    g.next();
    SplitMix64 h(g.next() ^ (b * 0x8CB92BA72F3D8DD7ULL));
    return h.next();
}

}  // namespace lamplighter
