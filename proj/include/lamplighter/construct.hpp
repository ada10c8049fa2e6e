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
 * @file construct.hpp
 * @brief Counting finite-codimension submodules and building subgroups with
 * prescribed invariants, together with sequences that converge to a given one.
 */

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "module.hpp"

namespace lamplighter {

using BigInt = boost::multiprecision::cpp_int;

/// Number of submodules M of R^k with dim_{F_p} R^k/M = a: p^{ak} - p^{(a-1)k}, or 1 when a = 0.
inline BigInt count_submodules_formula(std::uint32_t p, std::uint64_t k, std::uint64_t a) {
    if (a == 0) return 1;
    return boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(a * k)) -
           boost::multiprecision::pow(BigInt(p), static_cast<unsigned>((a - 1) * k));
}

inline constexpr std::uint64_t default_enumeration_budget = 1'000'000;

namespace detail {

/// All tuples of k nonnegative integers summing to a, in lexicographic order.
inline void compositions(std::size_t k, std::size_t a, std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() + 1 == k) {
        cur.push_back(a);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (std::size_t d = 0; d <= a; ++d) {
        cur.push_back(d);
        compositions(k, a - d, cur, out);
        cur.pop_back();
    }
}

inline Poly poly_from_code(std::uint32_t p, std::size_t len, std::uint64_t code) {
    std::vector<coeff_t> v(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
        v[i] = static_cast<coeff_t>(code % p);
        code /= p;
    }
    return Poly(p, std::move(v));
}

}  // namespace detail

/**
 * Every submodule of R^k of F_p-codimension a, as its canonical matrix over
 * F_p[x]: upper triangular, diagonal entries monic with nonzero constant term
 * and degrees summing to a, entries above a diagonal entry of degree d of
 * degree < d.  Ordered by diagonal degree tuple, then diagonal codes, then the
 * off-diagonal codes.  Each result has period 1 with the matrix rows as
 * generators.
 */
inline std::vector<SubmoduleGens> enumerate_submodules(std::uint32_t p, std::size_t k, std::size_t a,
                                                       std::uint64_t budget = default_enumeration_budget) {
    check_modulus(p);
    if (k == 0) throw std::domain_error("rank must be positive");
    const BigInt candidates = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(a * k));
    if (candidates > budget)
        throw resource_error("submodule enumeration exceeds budget",
                             candidates > BigInt(~0ull) ? ~0ull : candidates.convert_to<unsigned long long>());

    std::vector<std::vector<std::size_t>> degree_tuples;
    std::vector<std::size_t> cur;
    detail::compositions(k, a, cur, degree_tuples);

    std::vector<SubmoduleGens> out;
    for (const auto& deg : degree_tuples) {
        // Digits: one per diagonal entry (nonzero constant term), then one per (i < j) slot.
        std::vector<std::uint64_t> radix;
        for (std::size_t i = 0; i < k; ++i) radix.push_back(deg[i] == 0 ? 1 : ipow(p, deg[i]) - ipow(p, deg[i] - 1));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j) radix.push_back(ipow(p, deg[j]));
        std::vector<std::uint64_t> digit(radix.size(), 0);
        for (;;) {
            std::vector<std::vector<LaurentPoly>> rows(k, std::vector<LaurentPoly>(k, LaurentPoly(p)));
            std::size_t slot = 0;
            for (std::size_t i = 0; i < k; ++i, ++slot) {
                if (deg[i] == 0) {
                    rows[i][i] = LaurentPoly::one(p);
                    continue;
                }
                // Skip codes whose constant digit is zero: index t -> code with code % p != 0.
                const std::uint64_t t = digit[slot];
                const std::uint64_t code = (t / (p - 1)) * p + (t % (p - 1)) + 1;
                rows[i][i] = LaurentPoly(monic_from_code(p, deg[i], code));
            }
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = i + 1; j < k; ++j, ++slot)
                    rows[i][j] = LaurentPoly(detail::poly_from_code(p, deg[j], digit[slot]));
            std::vector<LaurentVector> gens;
            for (auto& r : rows) gens.emplace_back(std::move(r));
            out.emplace_back(k, p, 1, std::move(gens));

            bool done = true;
            for (std::size_t pos = radix.size(); pos-- > 0;) {
                if (++digit[pos] < radix[pos]) {
                    done = false;
                    break;
                }
                digit[pos] = 0;
            }
            if (done) break;
        }
    }
    return out;
}

namespace detail {

inline SubmoduleGens embed_coordinate(const SubmoduleGens& piece, std::size_t n, std::size_t i) {
    std::vector<LaurentVector> g;
    for (const auto& v : piece.generators()) {
        LaurentVector w(n, piece.p());
        w[i] = v[0];
        g.push_back(std::move(w));
    }
    return SubmoduleGens(n, piece.p(), piece.period(), std::move(g));
}

/// U subset of R with e(U) = b and rk_b(U) = b: first subgroup of codimension 0, then 1, with exact exponent b.
inline SubmoduleGens full_rank_piece(std::uint32_t p, std::int64_t b) {
    for (std::size_t codim = 0; codim <= 1; ++codim) {
        for (const auto& m : enumerate_submodules(p, static_cast<std::size_t>(b), codim)) {
            std::vector<LaurentVector> g;
            for (const auto& row : m.echelon().basis.row_data()) g.push_back(unrescale_vector(row, 1, b));
            SubmoduleGens u(1, p, b, std::move(g));
            if (exponent(u, b) == b) return u;
        }
    }
    throw consistency_error("no codimension-1 subgroup with exact period " + std::to_string(b));
}

/// {sum_{i<r} f_i(x^b) x^i}: exponent b and rank r when 0 < r < b.
inline SubmoduleGens partial_rank_piece(std::uint32_t p, std::int64_t b, std::int64_t r) {
    std::vector<LaurentVector> g;
    for (std::int64_t i = 0; i < r; ++i) g.push_back(LaurentVector::lamp(1, p, 0, position_of_exponent(i)));
    return SubmoduleGens(1, p, b, std::move(g));
}

}  // namespace detail

/**
 * An additive subgroup U of R^n with e(U) = b and rk_b(U) = r, 0 < r <= n b.
 * Coordinate i receives a one-dimensional piece of rank min(b, remaining);
 * ranks add across the direct sum and the exponent is the lcm of the pieces.
 */
inline SubmoduleGens construct_prescribed(std::size_t n, std::uint32_t p, std::int64_t b, std::int64_t r) {
    check_modulus(p);
    if (n == 0 || b <= 0) throw std::domain_error("construct_prescribed needs n > 0 and b > 0");
    if (r <= 0 || r > static_cast<std::int64_t>(n) * b)
        throw std::domain_error("construct_prescribed needs 0 < r <= n*b, got r = " + std::to_string(r));
    std::vector<LaurentVector> gens;
    std::int64_t remaining = r;
    for (std::size_t i = 0; i < n && remaining > 0; ++i) {
        const std::int64_t ri = std::min(b, remaining);
        remaining -= ri;
        const SubmoduleGens piece = ri == b ? detail::full_rank_piece(p, b) : detail::partial_rank_piece(p, b, ri);
        const SubmoduleGens embedded = detail::embed_coordinate(piece, n, i);
        for (const auto& v : embedded.generators()) gens.push_back(v);
    }
    return SubmoduleGens(n, p, b, std::move(gens));
}

/// f_m U for the first `count` non-unit irreducibles f_m; converges to {0}.
inline std::vector<SubmoduleGens> vanish_sequence(const SubmoduleGens& u, std::size_t count) {
    std::vector<SubmoduleGens> out;
    for (const auto& f : enumerate_irreducibles(u.p(), count)) {
        std::vector<LaurentVector> g;
        for (const auto& v : u.generators()) g.push_back(LaurentPoly(f) * v);
        out.emplace_back(u.n(), u.p(), u.period(), std::move(g));
    }
    return out;
}

/**
 * Subgroups U_m with U subset U_m, U_m != U, e(U_m) = e(U) b, r_{R^n,U_m} =
 * r_target and U_m -> U.  Works in the rescaled module M' = R^n with x acting
 * as x^e: the non-pivot coordinates of the Hermite basis of U span a free
 * complement F of rank r = r_{R^n,U}; a subgroup W' of F with exponent b and
 * rank r b - r_target is shrunk to f_m W' and added to U.
 */
inline std::vector<SubmoduleGens> approach_sequence(const SubmoduleGens& u, std::int64_t b, std::int64_t r_target,
                                                    std::size_t count) {
    const InvariantReport inv = r_value(u);
    if (inv.r <= 0) throw std::domain_error("approach_sequence needs r_{R^n,U} > 0");
    if (b <= 0) throw std::domain_error("approach_sequence needs b > 0");
    if (r_target < 0 || r_target >= inv.r * b)
        throw std::domain_error("approach_sequence needs 0 <= r' < r_{R^n,U} * b = " + std::to_string(inv.r * b) +
                                ", got r' = " + std::to_string(r_target));
    const std::int64_t e = inv.e;
    const std::size_t n = u.n();
    const std::uint32_t p = u.p();
    const SubmoduleGens ue = with_period(u, e);
    const auto& pivots = ue.echelon().pivots;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0, k = 0; c < n * static_cast<std::size_t>(e); ++c) {
        if (k < pivots.size() && pivots[k] == c)
            ++k;
        else
            free_cols.push_back(c);
    }
    const std::size_t r = free_cols.size();

    const SubmoduleGens w = construct_prescribed(r, p, b, inv.r * b - r_target);
    const std::int64_t eb = e * b;

    std::vector<LaurentVector> base;  // U as a subgroup with period e*b
    for (const auto& g : ue.generators())
        for (std::int64_t k = 0; k < b; ++k) base.push_back(g.shifted(k * e));

    // For some f_m the sum U + f_m W' is invariant under a smaller shift, so its
    // exponent drops below e b.  Such terms are skipped; the rest still converge to U.
    const std::size_t attempts = 4 * count + 16;
    std::vector<SubmoduleGens> out;
    InvariantReport last{};
    for (const auto& wm : vanish_sequence(w, attempts)) {
        if (out.size() == count) break;
        std::vector<LaurentVector> gens = base;
        for (const auto& g : wm.generators()) {
            std::vector<LaurentPoly> full(n * static_cast<std::size_t>(e), LaurentPoly(p));
            for (std::size_t k = 0; k < r; ++k) full[free_cols[k]] = g[k];
            gens.push_back(unrescale_vector(full, n, e));
        }
        SubmoduleGens um(n, p, eb, std::move(gens));
        last = r_value(um);
        if (last.e != eb || last.r != r_target || same_subgroup(um, u)) continue;
        out.push_back(std::move(um));
    }
    if (out.size() < count)
        throw consistency_error("approach_sequence found " + std::to_string(out.size()) + " of " +
                                std::to_string(count) + " terms; last rejected term had e = " +
                                std::to_string(last.e) + ", r = " + std::to_string(last.r));
    return out;
}

}  // namespace lamplighter
