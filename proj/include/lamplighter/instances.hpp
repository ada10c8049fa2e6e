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
 * @file instances.hpp
 * @brief Seeded random vectors, submodules, elements and triples for
 * property checks.
 */

#include <cstdint>
#include <vector>

#include "group.hpp"
#include "random.hpp"

namespace lamplighter {

/// Vector whose coordinates have random coefficients on exponents lo..hi.
inline LaurentVector random_vector(std::size_t n, std::uint32_t p, std::int64_t lo, std::int64_t hi, SplitMix64& rng) {
    std::vector<LaurentPoly> coords;
    for (std::size_t i = 0; i < n; ++i) {
        LaurentPoly f(p);
        for (std::int64_t k = lo; k <= hi; ++k) f = f + LaurentPoly::monomial(p, static_cast<coeff_t>(rng.uniform(p)), k);
        coords.push_back(f);
    }
    return LaurentVector(std::move(coords));
}

/// Subgroup with period e generated by `gens` random vectors supported on exponents [0, 2e).
inline SubmoduleGens random_submodule(std::size_t n, std::uint32_t p, std::int64_t e, std::size_t gens, SplitMix64& rng) {
    std::vector<LaurentVector> g;
    for (std::size_t k = 0; k < gens; ++k) g.push_back(random_vector(n, p, 0, 2 * e - 1, rng));
    return SubmoduleGens(n, p, e, std::move(g));
}

inline GroupElement random_element(std::size_t n, std::uint32_t p, std::int64_t radius, std::int64_t shift_bound, SplitMix64& rng) {
    const auto t = static_cast<std::int64_t>(rng.uniform(static_cast<std::uint64_t>(2 * shift_bound + 1))) - shift_bound;
    return {random_vector(n, p, -radius, radius, rng), t};
}

/// Triple (s, U, v) with U of period e dividing s.
inline SubgroupTriple random_triple(std::size_t n, std::uint32_t p, std::int64_t s, std::int64_t e, SplitMix64& rng) {
    if (s % e != 0) throw std::domain_error("period must divide s");
    SubmoduleGens u = random_submodule(n, p, e, static_cast<std::size_t>(rng.uniform(3)), rng);
    return make_triple(s, std::move(u), random_vector(n, p, -2, 2, rng));
}

}  // namespace lamplighter
