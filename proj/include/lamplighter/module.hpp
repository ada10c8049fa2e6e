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
 * @file module.hpp
 * @brief Periodic additive subgroups of R^n and their invariants.
 *
 * A subgroup U of R^n with x^e U = U is the same thing as a submodule of the
 * free module of rank n*e over S = F_p[y, y^-1], y acting as x^e, with basis
 * x^j b_i (0 <= j < e).  Coordinate (i, j) sits at index j*n + i.  All
 * decisions about U (membership, equality, rank) are made in that rescaled
 * module through its Hermite normal form.
 */

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "hermite.hpp"

namespace lamplighter {

class LaurentVector {
   public:
    LaurentVector(std::size_t n, std::uint32_t p) : coords_(n, LaurentPoly(p)) {}
    explicit LaurentVector(std::vector<LaurentPoly> coords) : coords_(std::move(coords)) {
        if (coords_.empty()) throw std::invalid_argument("LaurentVector needs at least one coordinate");
        for (const auto& c : coords_) check_same_modulus(c.modulus(), coords_.front().modulus());
    }

    /// The lamp e_i switched on at `position` (the monomial x^{-position} in coordinate i).
    static LaurentVector lamp(std::size_t n, std::uint32_t p, std::size_t i, std::int64_t position, coeff_t c = 1) {
        LaurentVector v(n, p);
        v.coords_.at(i) = LaurentPoly::monomial(p, c, exponent_of_position(position));
        return v;
    }

    std::size_t size() const noexcept { return coords_.size(); }
    std::uint32_t modulus() const noexcept { return coords_.front().modulus(); }
    const LaurentPoly& operator[](std::size_t i) const { return coords_.at(i); }
    LaurentPoly& operator[](std::size_t i) { return coords_.at(i); }
    const std::vector<LaurentPoly>& coords() const noexcept { return coords_; }
    bool is_zero() const noexcept { return is_zero_row(coords_); }

    LaurentVector shifted(std::int64_t k) const {
        LaurentVector r(*this);
        for (auto& c : r.coords_) c = c.shifted(k);
        return r;
    }

    friend LaurentVector operator+(LaurentVector a, const LaurentVector& b) {
        check_size(a, b);
        for (std::size_t i = 0; i < a.size(); ++i) a.coords_[i] += b.coords_[i];
        return a;
    }
    friend LaurentVector operator-(LaurentVector a, const LaurentVector& b) {
        check_size(a, b);
        for (std::size_t i = 0; i < a.size(); ++i) a.coords_[i] -= b.coords_[i];
        return a;
    }
    LaurentVector operator-() const {
        LaurentVector r(*this);
        for (auto& c : r.coords_) c = -c;
        return r;
    }
    friend LaurentVector operator*(const LaurentPoly& f, LaurentVector v) {
        for (auto& c : v.coords_) c = f * c;
        return v;
    }
    LaurentVector& operator+=(const LaurentVector& o) { return *this = *this + o; }

    friend bool operator==(const LaurentVector&, const LaurentVector&) = default;
    friend auto operator<=>(const LaurentVector&, const LaurentVector&) = default;

   private:
    static void check_size(const LaurentVector& a, const LaurentVector& b) {
        if (a.size() != b.size()) throw std::invalid_argument("LaurentVector length mismatch");
    }
    std::vector<LaurentPoly> coords_;
};

/// Splits w into n*e coordinates over y = x^e: the x^k term of coordinate i goes to index (k mod e)*n + i as y^{floor(k/e)}.
inline std::vector<LaurentPoly> rescale_vector(const LaurentVector& w, std::int64_t e) {
    const std::size_t n = w.size();
    const std::uint32_t p = w.modulus();
    std::vector<std::vector<std::pair<std::int64_t, coeff_t>>> terms(n * static_cast<std::size_t>(e));
    for (std::size_t i = 0; i < n; ++i) {
        const LaurentPoly& f = w[i];
        const auto& c = f.body().coefficients();
        for (std::size_t d = 0; d < c.size(); ++d) {
            if (c[d] == 0) continue;
            const std::int64_t k = f.offset() + static_cast<std::int64_t>(d);
            const auto j = static_cast<std::size_t>(floor_mod(k, e));
            terms[j * n + i].emplace_back(floor_div(k, e), c[d]);
        }
    }
    std::vector<LaurentPoly> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (t.empty()) {
            out.emplace_back(p);
            continue;
        }
        const std::int64_t low = t.front().first;
        std::vector<coeff_t> v(static_cast<std::size_t>(t.back().first - low + 1), 0);
        for (const auto& [q, c] : t) v[static_cast<std::size_t>(q - low)] = c;
        out.emplace_back(Poly(p, std::move(v)), low);
    }
    return out;
}

/// Inverse of rescale_vector.
inline LaurentVector unrescale_vector(const std::vector<LaurentPoly>& r, std::size_t n, std::int64_t e) {
    if (r.size() != n * static_cast<std::size_t>(e)) throw std::invalid_argument("rescaled vector has the wrong length");
    LaurentVector w(n, r.front().modulus());
    for (std::size_t idx = 0; idx < r.size(); ++idx) {
        if (r[idx].is_zero()) continue;
        const auto j = static_cast<std::int64_t>(idx / n);
        w[idx % n] += r[idx].substitute_power(e).shifted(j);
    }
    return w;
}

/**
 * The additive subgroup U of R^n generated by {x^{ke} g : g in gens, k in Z}.
 * x^e U = U holds by construction.  The Hermite form of U inside the
 * rescaled module of rank n*e is computed once and cached.
 */
class SubmoduleGens {
   public:
    SubmoduleGens(std::size_t n, std::uint32_t p, std::int64_t e, std::vector<LaurentVector> gens)
        : n_(n), p_(p), e_(e), gens_(std::move(gens)), echelon_{LaurentMatrix(p, 0), {}} {
        check_modulus(p);
        if (n == 0) throw std::domain_error("ambient rank must be positive");
        if (e <= 0) throw std::domain_error("period must be positive");
        for (const auto& g : gens_) {
            if (g.size() != n) throw std::invalid_argument("generator has the wrong number of coordinates");
            check_same_modulus(g.modulus(), p);
        }
        LaurentMatrix m(p, n * static_cast<std::size_t>(e));
        for (const auto& g : gens_) m.append_row(rescale_vector(g, e));
        echelon_ = hermite_normal_form(m);
    }

    static SubmoduleGens full(std::size_t n, std::uint32_t p) {
        std::vector<LaurentVector> g;
        for (std::size_t i = 0; i < n; ++i) g.push_back(LaurentVector::lamp(n, p, i, 0));
        return SubmoduleGens(n, p, 1, std::move(g));
    }
    static SubmoduleGens zero(std::size_t n, std::uint32_t p) { return SubmoduleGens(n, p, 1, {}); }

    std::size_t n() const noexcept { return n_; }
    std::uint32_t p() const noexcept { return p_; }
    std::int64_t period() const noexcept { return e_; }
    const std::vector<LaurentVector>& generators() const noexcept { return gens_; }
    /// Hermite form of U in the rescaled module at the stored period.
    const HermiteForm<LaurentPoly>& echelon() const noexcept { return echelon_; }

   private:
    std::size_t n_;
    std::uint32_t p_;
    std::int64_t e_;
    std::vector<LaurentVector> gens_;
    HermiteForm<LaurentPoly> echelon_;
};

/// Generator matrix of U over F_p[y, y^-1] with y = x^e; e must be a multiple of the stored period.
inline LaurentMatrix rescale(const SubmoduleGens& u, std::int64_t e) {
    if (e <= 0 || e % u.period() != 0)
        throw std::domain_error("rescale period " + std::to_string(e) + " is not a multiple of " + std::to_string(u.period()));
    LaurentMatrix m(u.p(), u.n() * static_cast<std::size_t>(e));
    for (const auto& g : u.generators())
        for (std::int64_t k = 0; k < e / u.period(); ++k) m.append_row(rescale_vector(g.shifted(k * u.period()), e));
    return m;
}

inline void check_ambient(const SubmoduleGens& u, const LaurentVector& w) {
    if (w.size() != u.n()) throw std::invalid_argument("vector length does not match the ambient rank");
    check_same_modulus(w.modulus(), u.p());
}

inline bool membership(const SubmoduleGens& u, const LaurentVector& w) {
    check_ambient(u, w);
    return in_row_space(u.echelon(), rescale_vector(w, u.period()));
}

/// Canonical representative of the coset w + U.
inline LaurentVector reduce_modulo(const SubmoduleGens& u, const LaurentVector& w) {
    check_ambient(u, w);
    return unrescale_vector(reduce_against(u.echelon(), rescale_vector(w, u.period())), u.n(), u.period());
}

/// Module rank of U over F_p[y, y^-1] at the stored period.
inline std::size_t rank_of(const SubmoduleGens& u) { return u.echelon().rank(); }

inline SubmoduleGens shift(const SubmoduleGens& u, std::int64_t k) {
    std::vector<LaurentVector> g;
    for (const auto& v : u.generators()) g.push_back(v.shifted(k));
    return SubmoduleGens(u.n(), u.p(), u.period(), std::move(g));
}

/// Decides x^d U = U by comparing canonical forms at the stored period.
inline bool is_shift_invariant(const SubmoduleGens& u, std::int64_t d) {
    if (d % u.period() == 0) return true;
    return hermite_normal_form(rescale(shift(u, d), u.period())) == u.echelon();
}

/// The same subgroup presented with period d; requires x^d U = U.
inline SubmoduleGens with_period(const SubmoduleGens& u, std::int64_t d) {
    if (d <= 0) throw std::domain_error("period must be positive");
    if (d == u.period()) return u;
    if (!is_shift_invariant(u, d))
        throw precondition_error("x^" + std::to_string(d) + " U != U");
    // x^g U = U for g = gcd(d, e), so U is spanned by gens over F_p[x^g, x^-g]
    // and by their x^{kg} translates (0 <= k < d/g) over F_p[x^d, x^-d].
    const std::int64_t g = std::gcd(d, u.period());
    std::vector<LaurentVector> gens;
    for (const auto& v : u.generators())
        for (std::int64_t k = 0; k < d / g; ++k) gens.push_back(v.shifted(k * g));
    return SubmoduleGens(u.n(), u.p(), d, std::move(gens));
}

inline std::vector<std::int64_t> divisors(std::int64_t s) {
    std::vector<std::int64_t> d;
    for (std::int64_t k = 1; k <= s; ++k)
        if (s % k == 0) d.push_back(k);
    return d;
}

/// e(U): the least positive d with x^d U = U, searched among the divisors of a known period s.
inline std::int64_t exponent(const SubmoduleGens& u, std::int64_t s) {
    if (s <= 0) throw std::domain_error("period must be positive");
    if (!is_shift_invariant(u, s)) throw precondition_error("x^" + std::to_string(s) + " U != U");
    for (std::int64_t d : divisors(s))
        if (is_shift_invariant(u, d)) return d;
    return s;
}

inline std::int64_t exponent(const SubmoduleGens& u) { return exponent(u, u.period()); }

/// rk_m(U): rank of U when x acts as x^m.
inline std::size_t rk_m(const SubmoduleGens& u, std::int64_t m) { return rank_of(with_period(u, m)); }

struct InvariantReport {
    std::int64_t e;
    std::int64_t rk;
    std::int64_t r;
    friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

/// (e(U), rk_e(U), r = n e - rk_e(U)) given a period s of U.
inline InvariantReport r_value(const SubmoduleGens& u, std::int64_t s) {
    const std::int64_t e = exponent(u, s);
    const auto rk = static_cast<std::int64_t>(rk_m(u, e));
    return {e, rk, static_cast<std::int64_t>(u.n()) * e - rk};
}

inline InvariantReport r_value(const SubmoduleGens& u) { return r_value(u, u.period()); }

/// Canonical presentation: period e(U), generators = Hermite basis rows mapped back to R^n.
inline SubmoduleGens canonical(const SubmoduleGens& u) {
    const std::int64_t e = exponent(u);
    const SubmoduleGens w = with_period(u, e);
    std::vector<LaurentVector> g;
    for (const auto& row : w.echelon().basis.row_data()) g.push_back(unrescale_vector(row, u.n(), e));
    return SubmoduleGens(u.n(), u.p(), e, std::move(g));
}

/// Same subgroup of R^n, regardless of presentation.
inline bool same_subgroup(const SubmoduleGens& a, const SubmoduleGens& b) {
    if (a.n() != b.n()) return false;
    check_same_modulus(a.p(), b.p());
    const std::int64_t l = std::lcm(a.period(), b.period());
    return hermite_normal_form(rescale(a, l)) == hermite_normal_form(rescale(b, l));
}

/// a is contained in b.
inline bool is_subset(const SubmoduleGens& a, const SubmoduleGens& b) {
    if (a.n() != b.n()) throw std::invalid_argument("ambient rank mismatch");
    const std::int64_t l = std::lcm(a.period(), b.period());
    for (const auto& g : a.generators())
        for (std::int64_t k = 0; k < l / a.period(); ++k)
            if (!membership(b, g.shifted(k * a.period()))) return false;
    return true;
}

}  // namespace lamplighter
