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
 * @file group.hpp
 * @brief The lamplighter group L_{n,p} = (Z/pZ)^n wr Z and its subgroups.
 *
 * Elements are pairs (v, s) with v in R^n and s in Z, multiplied by
 * (v, s)(w, t) = (v + x^s w, s + t).  A subgroup V is stored as the triple
 * (s, U, v): sZ is the projection of V to Z, U = V cap R^n, and (v, s) in V.
 */

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "module.hpp"

namespace lamplighter {

struct GroupElement {
    LaurentVector v;
    std::int64_t s = 0;

    static GroupElement identity(std::size_t n, std::uint32_t p) { return {LaurentVector(n, p), 0}; }
    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

inline GroupElement multiply(const GroupElement& g, const GroupElement& h) { return {g.v + h.v.shifted(g.s), g.s + h.s}; }

inline GroupElement inverse(const GroupElement& g) { return {-g.v.shifted(-g.s), -g.s}; }

/// (v, s)^k = (phi_k(x^s) v, k s) for k >= 0; negative k goes through the inverse.
inline GroupElement power(const GroupElement& g, std::int64_t k) {
    if (k < 0) return power(inverse(g), -k);
    if (k == 0) return GroupElement::identity(g.v.size(), g.v.modulus());
    if (g.s == 0) return {LaurentPoly::monomial(g.v.modulus(), static_cast<coeff_t>(k % g.v.modulus()), 0) * g.v, 0};
    // phi requires a positive step; for s < 0 factor out x^{(k-1)s}.
    const std::int64_t step = g.s > 0 ? g.s : -g.s;
    LaurentPoly f(phi(g.v.modulus(), k, step));
    if (g.s < 0) f = f.shifted((k - 1) * g.s);
    return {f * g.v, k * g.s};
}

struct SubgroupTriple {
    std::int64_t s;
    SubmoduleGens u;
    LaurentVector v;

    std::size_t n() const noexcept { return u.n(); }
    std::uint32_t p() const noexcept { return u.p(); }
};

/// Checks the triple conditions: s >= 0, x^s U = U when s > 0, v = 0 when s = 0.
inline SubgroupTriple make_triple(std::int64_t s, SubmoduleGens u, LaurentVector v) {
    if (s < 0) throw std::domain_error("triple needs s >= 0");
    check_ambient(u, v);
    if (s > 0 && !is_shift_invariant(u, s)) throw precondition_error("triple needs x^s U = U");
    if (s == 0 && !v.is_zero()) throw std::domain_error("a triple with s = 0 must have v = 0");
    return SubgroupTriple{s, std::move(u), std::move(v)};
}

inline bool triple_membership(const SubgroupTriple& V, const GroupElement& g) {
    if (V.s == 0) return g.s == 0 && membership(V.u, g.v);
    if (g.s % V.s != 0) return false;
    const GroupElement h = multiply(g, power(GroupElement{V.v, V.s}, -(g.s / V.s)));
    return membership(V.u, h.v);
}

/// U in canonical Hermite form at period e(U) and v reduced modulo U.
inline SubgroupTriple canonical_triple(const SubgroupTriple& V) {
    SubmoduleGens uc = canonical(V.u);
    LaurentVector vc = V.s == 0 ? LaurentVector(V.n(), V.p()) : reduce_modulo(uc, V.v);
    return SubgroupTriple{V.s, std::move(uc), std::move(vc)};
}

/// Equality of the subgroups the triples define.
inline bool same_subgroup(const SubgroupTriple& a, const SubgroupTriple& b) {
    if (a.s != b.s || !same_subgroup(a.u, b.u)) return false;
    return membership(a.u, a.v - b.v);
}

/// Structural equality of canonical triples.
inline bool identical(const SubgroupTriple& a, const SubgroupTriple& b) {
    return a.s == b.s && a.u.period() == b.u.period() && a.u.echelon() == b.u.echelon() && a.v == b.v;
}

/// W is a subgroup of V: s_V | s_W, U_W in U_V and v_W = phi_{s_W/s_V}(x^{s_V}) v_V mod U_V.
inline bool contains(const SubgroupTriple& V, const SubgroupTriple& W) {
    if (W.s == 0) return is_subset(W.u, V.u);
    if (V.s == 0 || W.s % V.s != 0) return false;
    if (!is_subset(W.u, V.u)) return false;
    const LaurentPoly f(phi(V.p(), W.s / V.s, V.s));
    return membership(V.u, W.v - f * V.v);
}

/// g V g^{-1} for g = (w, u): the triple (s, x^u U, x^u v + (1 - x^s) w), canonicalized.
inline SubgroupTriple conjugate(const GroupElement& g, const SubgroupTriple& V) {
    SubmoduleGens u = shift(V.u, g.s);
    if (V.s == 0) return canonical_triple(SubgroupTriple{0, std::move(u), LaurentVector(V.n(), V.p())});
    const LaurentVector w = g.v - g.v.shifted(V.s);
    return canonical_triple(SubgroupTriple{V.s, std::move(u), V.v.shifted(g.s) + w});
}

inline std::int64_t pi1(const SubgroupTriple& V) { return V.s; }
inline const SubmoduleGens& pi2(const SubgroupTriple& V) { return V.u; }

/// Membership test for the basic clopen set C_{A,B}: A inside V and B disjoint from V.
inline bool cylinder_test(const SubgroupTriple& V, const std::vector<GroupElement>& A, const std::vector<GroupElement>& B) {
    for (const auto& a : A)
        if (!triple_membership(V, a)) return false;
    for (const auto& b : B)
        if (triple_membership(V, b)) return false;
    return true;
}

/// A point of the encoding poset Q.
struct QPoint {
    std::int64_t t = 1;
    std::int64_t r = 0;
    friend bool operator==(const QPoint&, const QPoint&) = default;
    friend auto operator<=>(const QPoint&, const QPoint&) = default;
};

/// Phi(V) = (t_V, r_V) with t_V = s / e(U) and r_V = n e(U) - rk_{e(U)}(U).
inline QPoint phi_encoding(const SubgroupTriple& V) {
    if (V.s <= 0) throw std::domain_error("phi_encoding needs s > 0; subgroups of the lamp group lie in the perfect kernel");
    const InvariantReport rep = r_value(V.u, V.s);
    return {V.s / rep.e, rep.r};
}

/// Generators of L_{n,p}: the lamps a_i = (e_i at position 0, 0), tau = (0, 1), and their inverses.
inline std::vector<GroupElement> standard_generators(std::size_t n, std::uint32_t p) {
    std::vector<GroupElement> gens;
    for (std::size_t i = 0; i < n; ++i) {
        GroupElement a{LaurentVector::lamp(n, p, i, 0), 0};
        gens.push_back(a);
        gens.push_back(inverse(a));
    }
    GroupElement tau{LaurentVector(n, p), 1};
    gens.push_back(tau);
    gens.push_back(inverse(tau));
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return gens;
}

/// All elements of word length at most `radius`, sorted.
inline std::vector<GroupElement> word_ball(std::size_t n, std::uint32_t p, std::size_t radius) {
    const auto gens = standard_generators(n, p);
    std::set<GroupElement> ball{GroupElement::identity(n, p)};
    std::vector<GroupElement> frontier(ball.begin(), ball.end());
    for (std::size_t k = 0; k < radius; ++k) {
        std::vector<GroupElement> next;
        for (const auto& g : frontier)
            for (const auto& a : gens) {
                GroupElement h = multiply(g, a);
                if (ball.insert(h).second) next.push_back(std::move(h));
            }
        frontier = std::move(next);
    }
    return {ball.begin(), ball.end()};
}

/**
 * Parameters of the finite test set used to certify convergence: all (w, t)
 * with every lamp of w at a position in [-radius, radius] and |t| <= shift_bound.
 */
struct BallSpec {
    std::int64_t radius = 0;
    std::int64_t shift_bound = 0;
};

inline constexpr std::uint64_t default_ball_budget = 4'000'000;

/// Number of elements in the test set of a ball.
inline std::uint64_t ball_size(std::size_t n, std::uint32_t p, const BallSpec& ball) {
    std::uint64_t lamps = 1;
    const std::uint64_t cells = n * static_cast<std::uint64_t>(2 * ball.radius + 1);
    for (std::uint64_t i = 0; i < cells; ++i) {
        lamps *= p;
        if (lamps > default_ball_budget) return default_ball_budget + 1;
    }
    return lamps * static_cast<std::uint64_t>(2 * ball.shift_bound + 1);
}

namespace detail {

/// Dense F_p coordinates of a family of vectors over their common exponent range.
struct DenseFamily {
    std::int64_t lo = 0;
    std::size_t width = 0;
    std::size_t n = 0;

    explicit DenseFamily(const std::vector<LaurentVector>& vs) {
        bool any = false;
        std::int64_t hi = 0;
        for (const auto& v : vs) {
            n = v.size();
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (v[i].is_zero()) continue;
                const std::int64_t a = *v[i].min_exponent(), b = *v[i].max_exponent();
                lo = any ? std::min(lo, a) : a;
                hi = any ? std::max(hi, b) : b;
                any = true;
            }
        }
        width = any ? static_cast<std::size_t>(hi - lo + 1) : 0;
    }

    std::vector<coeff_t> dense(const LaurentVector& v) const {
        std::vector<coeff_t> out(n * width, 0);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i].is_zero()) continue;
            for (std::int64_t k = *v[i].min_exponent(); k <= *v[i].max_exponent(); ++k)
                out[i * width + static_cast<std::size_t>(k - lo)] = v[i].coeff(k);
        }
        return out;
    }
};

inline void add_into(std::vector<coeff_t>& acc, const std::vector<coeff_t>& x, std::uint32_t p) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = mod_add(acc[i], x[i], p);
}

inline bool all_zero(const std::vector<coeff_t>& v) {
    return std::all_of(v.begin(), v.end(), [](coeff_t c) { return c == 0; });
}

/// Lamp configuration with base-p digits of `code` at cells ordered by (position, coordinate).
inline LaurentVector lamps_from_code(std::size_t n, std::uint32_t p, std::int64_t radius, std::uint64_t code) {
    LaurentVector w(n, p);
    for (std::int64_t pos = -radius; pos <= radius; ++pos)
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = static_cast<coeff_t>(code % p);
            code /= p;
            if (c != 0) w = w + LaurentVector::lamp(n, p, i, pos, c);
        }
    return w;
}

}  // namespace detail

/**
 * Membership of every element of the ball's test set in V, in the order
 * t = -shift_bound..shift_bound (outer) and lamp code 0..p^{n(2R+1)}-1 (inner).
 *
 * For fixed t the map w -> reduce_modulo(U, w + x^t a_t) is affine, so the
 * lamp configurations are walked as a base-p odometer and each step adds the
 * reduced image of one lamp.
 */
inline std::vector<bool> ball_membership(const SubgroupTriple& V, const BallSpec& ball) {
    const std::size_t n = V.n();
    const std::uint32_t p = V.p();
    const std::uint64_t total = ball_size(n, p, ball);
    if (total > default_ball_budget) throw resource_error("convergence test set exceeds the budget", total);
    const std::size_t cells = n * static_cast<std::size_t>(2 * ball.radius + 1);
    const std::uint64_t configs = total / static_cast<std::uint64_t>(2 * ball.shift_bound + 1);

    std::vector<LaurentVector> images;
    for (std::int64_t pos = -ball.radius; pos <= ball.radius; ++pos)
        for (std::size_t i = 0; i < n; ++i) images.push_back(reduce_modulo(V.u, LaurentVector::lamp(n, p, i, pos)));
    std::vector<std::int64_t> shifts;
    std::vector<LaurentVector> offsets;
    for (std::int64_t t = -ball.shift_bound; t <= ball.shift_bound; ++t) {
        if (V.s == 0 ? t != 0 : t % V.s != 0) continue;
        LaurentVector a = V.s == 0 ? LaurentVector(n, p) : power(GroupElement{V.v, V.s}, -(t / V.s)).v.shifted(t);
        shifts.push_back(t);
        offsets.push_back(reduce_modulo(V.u, a));
    }
    std::vector<LaurentVector> all = images;
    all.insert(all.end(), offsets.begin(), offsets.end());
    const detail::DenseFamily fam(all);
    std::vector<std::vector<coeff_t>> dense_images;
    for (const auto& im : images) dense_images.push_back(fam.dense(im));

    std::vector<bool> out;
    out.reserve(total);
    std::size_t next_shift = 0;
    for (std::int64_t t = -ball.shift_bound; t <= ball.shift_bound; ++t) {
        if (next_shift >= shifts.size() || shifts[next_shift] != t) {
            out.insert(out.end(), configs, false);
            continue;
        }
        std::vector<coeff_t> acc = fam.dense(offsets[next_shift++]);
        std::vector<coeff_t> digits(cells, 0);
        for (std::uint64_t code = 0; code < configs; ++code) {
            out.push_back(detail::all_zero(acc));
            for (std::size_t c = 0; c < cells; ++c) {
                detail::add_into(acc, dense_images[c], p);
                digits[c] = static_cast<coeff_t>((digits[c] + 1) % p);
                if (digits[c] != 0) break;
            }
        }
    }
    return out;
}

/// Element of the ball's test set at a given index of ball_membership's order.
inline GroupElement ball_element(std::size_t n, std::uint32_t p, const BallSpec& ball, std::uint64_t index) {
    const std::uint64_t configs = ball_size(n, p, ball) / static_cast<std::uint64_t>(2 * ball.shift_bound + 1);
    const auto t = static_cast<std::int64_t>(index / configs) - ball.shift_bound;
    return {detail::lamps_from_code(n, p, ball.radius, index % configs), t};
}

struct ConvergenceReport {
    bool converged = false;
    /// Least m0 such that membership agrees with the limit for every m0 <= m <= horizon.
    std::int64_t stabilization_index = 0;
    std::uint64_t test_set_size = 0;
    /// An element on which the last disagreeing term differs from the limit.
    std::optional<GroupElement> witness;
    std::int64_t witness_term = 0;
};

/**
 * Certifies that terms 1..horizon of a sequence agree with V on the ball's
 * test set from some index on.  Fails, naming a witness, when the term at the
 * horizon still disagrees.
 */
inline ConvergenceReport converges_on_ball(const std::function<SubgroupTriple(std::int64_t)>& sequence,
                                           const SubgroupTriple& V, const BallSpec& ball, std::int64_t horizon) {
    if (horizon < 1) throw std::domain_error("horizon must be at least 1");
    const std::vector<bool> target = ball_membership(V, ball);
    ConvergenceReport rep;
    rep.test_set_size = target.size();
    std::int64_t last_bad = 0;
    for (std::int64_t m = 1; m <= horizon; ++m) {
        const SubgroupTriple Vm = sequence(m);
        if (Vm.n() != V.n()) throw std::invalid_argument("sequence term has the wrong ambient rank");
        const std::vector<bool> got = ball_membership(Vm, ball);
        const auto diff = std::mismatch(got.begin(), got.end(), target.begin());
        if (diff.first != got.end()) {
            last_bad = m;
            rep.witness = ball_element(V.n(), V.p(), ball, static_cast<std::uint64_t>(diff.first - got.begin()));
            rep.witness_term = m;
        }
    }
    rep.converged = last_bad < horizon;
    rep.stabilization_index = last_bad + 1;
    if (rep.converged) rep.witness.reset();
    return rep;
}

}  // namespace lamplighter
