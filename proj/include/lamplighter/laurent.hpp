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
 * @file laurent.hpp
 * @brief Elements of the Laurent ring R = F_p[x, x^-1].
 *
 * An element is stored as x^offset * body where body has a nonzero constant
 * term (or is zero, in which case offset is 0).  This is the normal form with
 * respect to the monomial units, so equality is structural.
 *
 * Lamp positions follow the shift convention (x w)_i = w_{i+1}: the lamp at
 * position i is the monomial x^{-i}.
 */

#include <compare>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace lamplighter {

/// Exponent of the monomial that represents a single lamp at `position`.
constexpr std::int64_t exponent_of_position(std::int64_t position) noexcept { return -position; }
constexpr std::int64_t position_of_exponent(std::int64_t exponent) noexcept { return -exponent; }

class LaurentPoly {
   public:
    explicit LaurentPoly(std::uint32_t p) : body_(p) {}
    LaurentPoly(Poly body, std::int64_t offset = 0) : body_(std::move(body)), offset_(offset) { normalize(); }

    static LaurentPoly monomial(std::uint32_t p, coeff_t c, std::int64_t k) { return LaurentPoly(Poly::constant(p, c), k); }
    static LaurentPoly one(std::uint32_t p) { return LaurentPoly(Poly::one(p)); }

    std::uint32_t modulus() const noexcept { return body_.modulus(); }
    bool is_zero() const noexcept { return body_.is_zero(); }
    const Poly& body() const noexcept { return body_; }
    std::int64_t offset() const noexcept { return offset_; }

    /// Degree of the body, i.e. max exponent minus min exponent; the Euclidean norm on R.
    std::size_t span() const noexcept { return body_.is_zero() ? 0 : *body_.degree(); }
    std::optional<std::int64_t> min_exponent() const noexcept {
        if (is_zero()) return std::nullopt;
        return offset_;
    }
    std::optional<std::int64_t> max_exponent() const noexcept {
        if (is_zero()) return std::nullopt;
        return offset_ + static_cast<std::int64_t>(*body_.degree());
    }
    coeff_t coeff(std::int64_t k) const noexcept {
        if (k < offset_) return 0;
        return body_.coeff(static_cast<std::size_t>(k - offset_));
    }

    /// Multiplication by the unit x^k.
    LaurentPoly shifted(std::int64_t k) const {
        LaurentPoly r(*this);
        if (!r.is_zero()) r.offset_ += k;
        return r;
    }
    LaurentPoly scaled(coeff_t c) const { return LaurentPoly(body_.scaled(c), offset_); }

    /// f(x^e) for e >= 1.
    LaurentPoly substitute_power(std::int64_t e) const {
        if (is_zero() || e == 1) return *this;
        const auto& c = body_.coefficients();
        std::vector<coeff_t> v(static_cast<std::size_t>((c.size() - 1) * e + 1), 0);
        for (std::size_t i = 0; i < c.size(); ++i) v[i * static_cast<std::size_t>(e)] = c[i];
        return LaurentPoly(Poly(modulus(), std::move(v)), offset_ * e);
    }

    LaurentPoly operator-() const { return LaurentPoly(-body_, offset_); }
    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        check_same_modulus(a.modulus(), b.modulus());
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const std::int64_t low = std::min(a.offset_, b.offset_);
        return LaurentPoly(a.body_.shifted_up(static_cast<std::size_t>(a.offset_ - low)) +
                               b.body_.shifted_up(static_cast<std::size_t>(b.offset_ - low)),
                           low);
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero() || b.is_zero()) {
            check_same_modulus(a.modulus(), b.modulus());
            return LaurentPoly(a.modulus());
        }
        return LaurentPoly(a.body_ * b.body_, a.offset_ + b.offset_);
    }
    LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;
    friend std::strong_ordering operator<=>(const LaurentPoly& a, const LaurentPoly& b) {
        if (auto c = a.body_ <=> b.body_; c != 0) return c;
        return a.offset_ <=> b.offset_;
    }

   private:
    void normalize() {
        if (body_.is_zero()) {
            offset_ = 0;
            return;
        }
        const std::size_t v = body_.valuation();
        if (v) {
            body_ = body_.shifted_down(v);
            offset_ += static_cast<std::int64_t>(v);
        }
    }

    Poly body_;
    std::int64_t offset_ = 0;
};

inline LaurentPoly to_laurent(const Poly& f) { return LaurentPoly(f); }

/// The inverse of x modulo d, for d with nonzero constant term: x * (-(d - d0)/(x d0)) = 1 mod d.
inline Poly inverse_of_x_mod(const Poly& d) {
    const std::uint32_t p = d.modulus();
    if (d.is_zero() || d.coeff(0) == 0) throw std::domain_error("x is not invertible modulo d");
    if (*d.degree() == 0) return Poly(p);
    const coeff_t c = mod_neg(mod_inv(d.coeff(0), p), p);
    return d.shifted_down(1).scaled(c);
}

inline Poly powmod(Poly base, std::uint64_t e, const Poly& m) {
    Poly r = Poly::one(m.modulus()) % m;
    base = base % m;
    while (e) {
        if (e & 1) r = (r * base) % m;
        base = (base * base) % m;
        e >>= 1;
    }
    return r;
}

/// Canonical residue of a modulo d in F_p[x]/(d), d normalized with d(0) != 0: a polynomial of degree < deg d.
inline Poly laurent_residue(const LaurentPoly& a, const Poly& d) {
    if (a.is_zero()) return Poly(a.modulus());
    const Poly body = a.body() % d;
    const std::int64_t k = a.offset();
    const Poly unit = k >= 0 ? powmod(Poly::x(d.modulus()), static_cast<std::uint64_t>(k), d)
                             : powmod(inverse_of_x_mod(d), static_cast<std::uint64_t>(-k), d);
    return (body * unit) % d;
}

}  // namespace lamplighter
