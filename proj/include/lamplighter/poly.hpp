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
 * @file poly.hpp
 * @brief Dense univariate polynomials over the prime field F_p.
 *
 * Coefficients are stored lowest degree first with no trailing zeros, so two
 * polynomials are equal exactly when their coefficient vectors are.  The zero
 * polynomial has an empty coefficient vector and no degree.
 */

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "field.hpp"

namespace lamplighter {

class Poly {
   public:
    explicit Poly(std::uint32_t p) : p_(p) {}
    Poly(std::uint32_t p, std::vector<coeff_t> coeffs) : p_(p), c_(std::move(coeffs)) {
        for (auto& a : c_) a %= p_;
        trim();
    }

    static Poly constant(std::uint32_t p, coeff_t c) { return Poly(p, {c}); }
    static Poly one(std::uint32_t p) { return constant(p, 1); }
    static Poly monomial(std::uint32_t p, coeff_t c, std::size_t k) {
        std::vector<coeff_t> v(k + 1, 0);
        v[k] = c;
        return Poly(p, std::move(v));
    }
    static Poly x(std::uint32_t p) { return monomial(p, 1, 1); }

    std::uint32_t modulus() const noexcept { return p_; }
    bool is_zero() const noexcept { return c_.empty(); }
    std::optional<std::size_t> degree() const noexcept {
        if (c_.empty()) return std::nullopt;
        return c_.size() - 1;
    }
    coeff_t coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
    coeff_t leading() const noexcept { return c_.empty() ? 0 : c_.back(); }
    const std::vector<coeff_t>& coefficients() const noexcept { return c_; }

    /// Number of trailing zero coefficients, i.e. the largest k with x^k | f.  Zero for f = 0.
    std::size_t valuation() const noexcept {
        std::size_t k = 0;
        while (k < c_.size() && c_[k] == 0) ++k;
        return k == c_.size() ? 0 : k;
    }

    Poly shifted_up(std::size_t k) const {
        if (is_zero() || k == 0) return *this;
        std::vector<coeff_t> v(k, 0);
        v.insert(v.end(), c_.begin(), c_.end());
        return Poly(p_, std::move(v), trusted{});
    }
    /// Drops the k lowest coefficients, i.e. exact division by x^k when they are zero.
    Poly shifted_down(std::size_t k) const {
        if (k >= c_.size()) return Poly(p_);
        return Poly(p_, std::vector<coeff_t>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()), trusted{});
    }

    Poly scaled(coeff_t s) const {
        s %= p_;
        if (s == 0) return Poly(p_);
        std::vector<coeff_t> v(c_);
        for (auto& a : v) a = mod_mul(a, s, p_);
        return Poly(p_, std::move(v), trusted{});
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(mod_inv(leading(), p_));
    }

    Poly operator-() const {
        std::vector<coeff_t> v(c_);
        for (auto& a : v) a = mod_neg(a, p_);
        return Poly(p_, std::move(v), trusted{});
    }

    Poly& operator+=(const Poly& o) {
        check_same_modulus(p_, o.p_);
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = mod_add(c_[i], o.c_[i], p_);
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check_same_modulus(p_, o.p_);
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = mod_sub(c_[i], o.c_[i], p_);
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        check_same_modulus(a.p_, b.p_);
        if (a.is_zero() || b.is_zero()) return Poly(a.p_);
        const std::uint32_t p = a.p_;
        std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                acc[i + j] += static_cast<std::uint64_t>(a.c_[i]) * b.c_[j];
                if (acc[i + j] >= (std::uint64_t{1} << 62)) acc[i + j] %= p;
            }
        }
        std::vector<coeff_t> v(acc.size());
        for (std::size_t k = 0; k < acc.size(); ++k) v[k] = static_cast<coeff_t>(acc[k] % p);
        return Poly(p, std::move(v), trusted{});
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly&, const Poly&) = default;
    /// Orders by modulus, then degree, then coefficients from the top down.
    friend std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
        if (auto c = a.p_ <=> b.p_; c != 0) return c;
        if (auto c = a.c_.size() <=> b.c_.size(); c != 0) return c;
        return std::lexicographical_compare_three_way(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
    }

   private:
    struct trusted {};
    Poly(std::uint32_t p, std::vector<coeff_t> coeffs, trusted) : p_(p), c_(std::move(coeffs)) { trim(); }
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::uint32_t p_;
    std::vector<coeff_t> c_;
};

/// Euclidean division: a = q*b + r with r = 0 or deg r < deg b.
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    check_same_modulus(a.modulus(), b.modulus());
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const std::uint32_t p = a.modulus();
    if (a.is_zero() || *a.degree() < *b.degree()) return {Poly(p), a};
    std::vector<coeff_t> r = a.coefficients();
    const auto& d = b.coefficients();
    const std::size_t db = d.size() - 1;
    const coeff_t inv_lead = mod_inv(d.back(), p);
    std::vector<coeff_t> q(r.size() - db, 0);
    for (std::size_t k = r.size(); k-- > db;) {
        const coeff_t c = mod_mul(r[k], inv_lead, p);
        if (c == 0) continue;
        q[k - db] = c;
        for (std::size_t i = 0; i <= db; ++i) r[k - db + i] = mod_sub(r[k - db + i], mod_mul(c, d[i], p), p);
    }
    return {Poly(p, std::move(q)), Poly(p, std::move(r))};
}

inline Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

inline bool divides(const Poly& d, const Poly& a) { return (a % d).is_zero(); }

/// Monic greatest common divisor; poly_gcd(0, 0) = 0.
inline Poly poly_gcd(Poly a, Poly b) {
    check_same_modulus(a.modulus(), b.modulus());
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// 1 + x^s + x^{2s} + ... + x^{(t-1)s}, the geometric sum phi_t evaluated at x^s.
inline Poly phi(std::uint32_t p, std::int64_t t, std::int64_t s) {
    if (t <= 0 || s <= 0) throw std::domain_error("phi requires t >= 1 and s >= 1");
    std::vector<coeff_t> v(static_cast<std::size_t>((t - 1) * s + 1), 0);
    for (std::int64_t k = 0; k < t; ++k) v[static_cast<std::size_t>(k * s)] = 1;
    return Poly(p, std::move(v));
}

/// Monic polynomial of degree d whose lower coefficients are the base-p digits of `code`.
inline Poly monic_from_code(std::uint32_t p, std::size_t d, std::uint64_t code) {
    std::vector<coeff_t> v(d + 1, 0);
    for (std::size_t i = 0; i < d; ++i) {
        v[i] = static_cast<coeff_t>(code % p);
        code /= p;
    }
    v[d] = 1;
    return Poly(p, std::move(v));
}

inline std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

/// Trial division by every monic polynomial of degree 1..deg(f)/2.
inline bool is_irreducible(const Poly& f) {
    if (f.is_zero() || *f.degree() == 0) return false;
    const std::size_t d = *f.degree();
    const std::uint32_t p = f.modulus();
    for (std::size_t k = 1; 2 * k <= d; ++k) {
        const std::uint64_t n = ipow(p, k);
        for (std::uint64_t code = 0; code < n; ++code)
            if (divides(monic_from_code(p, k, code), f)) return false;
    }
    return true;
}

/**
 * The first `count` monic irreducibles of F_p[x] other than x, ordered by
 * degree and then by the base-p code of their lower coefficients.  x is left
 * out because it is a unit of the Laurent ring.
 */
inline std::vector<Poly> enumerate_irreducibles(std::uint32_t p, std::size_t count) {
    check_modulus(p);
    std::vector<Poly> found;  // includes x for use as a trial divisor
    std::vector<Poly> out;
    for (std::size_t d = 1; out.size() < count; ++d) {
        const std::uint64_t n = ipow(p, d);
        for (std::uint64_t code = 0; code < n && out.size() < count; ++code) {
            Poly f = monic_from_code(p, d, code);
            bool irreducible = true;
            for (const auto& g : found) {
                if (2 * *g.degree() > d) break;
                if (divides(g, f)) {
                    irreducible = false;
                    break;
                }
            }
            if (!irreducible) continue;
            found.push_back(f);
            if (code != 0) out.push_back(std::move(f));
        }
    }
    return out;
}

}  // namespace lamplighter
