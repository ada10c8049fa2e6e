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

#include <cstdint>
#include <string>
#include <utility>

#include "errors.hpp"

namespace lamplighter {

using coeff_t = std::uint32_t;

/// Primes are restricted to p < 2^16 so that products fit comfortably in 64 bits.
inline constexpr std::uint32_t modulus_limit = 1u << 16;

constexpr bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline void check_modulus(std::uint32_t p) {
    if (p >= modulus_limit || !is_prime(p))
        throw context_error("modulus " + std::to_string(p) + " is not a prime below 2^16");
}

inline void check_same_modulus(std::uint32_t a, std::uint32_t b) {
    if (a != b) throw context_error("mismatched moduli " + std::to_string(a) + " and " + std::to_string(b));
}

constexpr coeff_t mod_add(coeff_t a, coeff_t b, std::uint32_t p) noexcept {
    const std::uint32_t s = a + b;
    return s >= p ? s - p : s;
}

constexpr coeff_t mod_sub(coeff_t a, coeff_t b, std::uint32_t p) noexcept { return a >= b ? a - b : a + p - b; }

constexpr coeff_t mod_neg(coeff_t a, std::uint32_t p) noexcept { return a == 0 ? 0 : p - a; }

constexpr coeff_t mod_mul(coeff_t a, coeff_t b, std::uint32_t p) noexcept {
    return static_cast<coeff_t>((static_cast<std::uint64_t>(a) * b) % p);
}

/// Reduces a signed integer into [0, p).
constexpr coeff_t mod_reduce(std::int64_t a, std::uint32_t p) noexcept {
    const std::int64_t r = a % static_cast<std::int64_t>(p);
    return static_cast<coeff_t>(r < 0 ? r + p : r);
}

inline coeff_t mod_inv(coeff_t a, std::uint32_t p) {
    if (a % p == 0) throw std::domain_error("zero has no inverse mod p");
    std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    return mod_reduce(t, p);
}

/// Floor division and nonnegative remainder for signed exponents.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) noexcept {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

constexpr std::int64_t floor_mod(std::int64_t a, std::int64_t b) noexcept { return a - floor_div(a, b) * b; }

}  // namespace lamplighter
