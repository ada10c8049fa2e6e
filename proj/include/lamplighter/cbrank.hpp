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
 * @file cbrank.hpp
 * @brief Cantor-Bendixson levels of finite posets, the encoding poset Q, and
 * sequences of subgroups converging from below in Q.
 */

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "construct.hpp"
#include "errors.hpp"
#include "group.hpp"

namespace lamplighter {

/// (t', r') < (t, r) iff t' | t and t' r' < t r.
inline bool q_less(const QPoint& a, const QPoint& b) {
    if (a.t < 1 || b.t < 1) throw std::domain_error("QPoint needs t >= 1");
    return b.t % a.t == 0 && a.t * a.r < b.t * b.r;
}

/// A finite set with a strict transitive relation.
template <class T>
class FinitePoset {
   public:
    using relation = std::function<bool(const T&, const T&)>;

    FinitePoset(std::vector<T> elements, relation less) : elements_(std::move(elements)), less_(std::move(less)) {
        const std::size_t n = elements_.size();
        below_.assign(n, {});
        for (std::size_t i = 0; i < n; ++i) {
            if (less_(elements_[i], elements_[i])) throw precondition_error("relation is not irreflexive");
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && less_(elements_[j], elements_[i])) below_[i].push_back(j);
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j : below_[i])
                for (std::size_t k : below_[j])
                    if (!less_(elements_[k], elements_[i])) throw precondition_error("relation is not transitive");
    }

    std::size_t size() const noexcept { return elements_.size(); }
    const std::vector<T>& elements() const noexcept { return elements_; }
    bool less(std::size_t a, std::size_t b) const { return less_(elements_[a], elements_[b]); }
    /// Indices of the elements strictly below element i.
    const std::vector<std::size_t>& below(std::size_t i) const noexcept { return below_[i]; }

   private:
    std::vector<T> elements_;
    relation less_;
    std::vector<std::vector<std::size_t>> below_;
};

/**
 * level[i] = the derivative step at which element i becomes minimal: step 0
 * takes the minimal elements, step k the minimal elements of what remains.
 */
template <class T>
std::vector<std::size_t> cb_levels(const FinitePoset<T>& P) {
    const std::size_t n = P.size();
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> level(n, unset);
    std::size_t assigned = 0;
    for (std::size_t step = 0; assigned < n; ++step) {
        std::vector<std::size_t> minimal;
        for (std::size_t i = 0; i < n; ++i) {
            if (level[i] != unset) continue;
            bool is_min = true;
            for (std::size_t j : P.below(i))
                if (level[j] == unset) {
                    is_min = false;
                    break;
                }
            if (is_min) minimal.push_back(i);
        }
        if (minimal.empty()) throw consistency_error("derivative iteration stalled");
        for (std::size_t i : minimal) level[i] = step;
        assigned += minimal.size();
    }
    return level;
}

/// {(t, r) : 1 <= t <= t_max, r >= 0, t r <= product_max}, ordered by (t, r).
inline FinitePoset<QPoint> q_truncation(std::int64_t t_max, std::int64_t product_max) {
    if (t_max < 1 || product_max < 0) throw std::domain_error("truncation bounds must be positive");
    std::vector<QPoint> pts;
    for (std::int64_t t = 1; t <= t_max; ++t)
        for (std::int64_t r = 0; t * r <= product_max; ++r) pts.push_back({t, r});
    return FinitePoset<QPoint>(std::move(pts), [](const QPoint& a, const QPoint& b) { return q_less(a, b); });
}

/// Level of (t, r) in Q: t r.
inline std::int64_t q_level_closed_form(const QPoint& q) { return q.r == 0 ? 0 : q.t * q.r; }

struct RankCertificateRow {
    std::int64_t product_max;
    std::size_t max_level;
    /// Levels of (2^k, 1) for every 2^k <= product_max.
    std::vector<std::pair<QPoint, std::size_t>> chain;
};

struct RankCertificate {
    std::vector<RankCertificateRow> rows;
    /// Chain levels strictly increase and the maximal level grows with every bound.
    bool unbounded = false;
};

/**
 * Levels along the chain (2^k, 1) in truncations Q(P, P) for an increasing
 * list of bounds P: finite evidence that the levels of Q are unbounded.
 */
inline RankCertificate rank_unbounded_certificate(const std::vector<std::int64_t>& product_max_list) {
    RankCertificate cert;
    cert.unbounded = !product_max_list.empty();
    for (std::size_t k = 0; k < product_max_list.size(); ++k) {
        const std::int64_t P = product_max_list[k];
        if (k > 0 && P <= product_max_list[k - 1]) throw std::domain_error("bounds must increase");
        const auto poset = q_truncation(P, P);
        const auto level = cb_levels(poset);
        RankCertificateRow row{P, 0, {}};
        for (std::size_t i = 0; i < poset.size(); ++i) {
            row.max_level = std::max(row.max_level, level[i]);
            const QPoint q = poset.elements()[i];
            if (q.r == 1 && (q.t & (q.t - 1)) == 0 && q.t >= 2) row.chain.emplace_back(q, level[i]);
        }
        for (std::size_t c = 1; c < row.chain.size(); ++c)
            if (row.chain[c].second <= row.chain[c - 1].second) cert.unbounded = false;
        if (k > 0 && row.max_level <= cert.rows.back().max_level) cert.unbounded = false;
        cert.rows.push_back(std::move(row));
    }
    return cert;
}

/**
 * Subgroups V_m -> V with Phi(V_m) = q_target: for V = (t e, U, v) and
 * b = t / t', the terms are (t e, U_m, v) with U_m from approach_sequence.
 */
inline std::vector<SubgroupTriple> build_approach_sequence(const SubgroupTriple& V, const QPoint& q_target,
                                                           std::size_t count) {
    const QPoint q = phi_encoding(V);
    if (!q_less(q_target, q))
        throw std::domain_error("target (" + std::to_string(q_target.t) + "," + std::to_string(q_target.r) +
                                ") is not below (" + std::to_string(q.t) + "," + std::to_string(q.r) + ")");
    const SubmoduleGens u = canonical(V.u);
    const std::int64_t b = q.t / q_target.t;
    std::vector<SubgroupTriple> out;
    for (auto& um : approach_sequence(u, b, q_target.r, count)) out.push_back(make_triple(V.s, std::move(um), V.v));
    return out;
}

struct LimitGroup {
    QPoint q;
    std::vector<std::size_t> indices;
    bool divides = false;
    bool bounded = false;
    bool strict = false;
    /// The last term of the group equals V.
    bool stabilizing = false;
};

struct LimitClassification {
    QPoint limit;
    std::vector<LimitGroup> groups;
};

/**
 * Groups a sequence converging to V by Phi-value, in order of first
 * occurrence, and checks t' | t_V, t' r' <= t_V r_V, with strict inequality
 * for groups that do not stabilize at V.  A violation raises consistency_error.
 */
inline LimitClassification classify_limit(const std::vector<SubgroupTriple>& sequence, const SubgroupTriple& V) {
    LimitClassification out{phi_encoding(V), {}};
    const QPoint qv = out.limit;
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        const QPoint q = phi_encoding(sequence[i]);
        auto it = std::find_if(out.groups.begin(), out.groups.end(), [&](const LimitGroup& g) { return g.q == q; });
        if (it == out.groups.end()) {
            out.groups.push_back(LimitGroup{q, {}, false, false, false, false});
            it = std::prev(out.groups.end());
        }
        it->indices.push_back(i);
    }
    for (auto& g : out.groups) {
        g.divides = qv.t % g.q.t == 0;
        g.bounded = g.q.t * g.q.r <= qv.t * qv.r;
        g.strict = g.q.t * g.q.r < qv.t * qv.r;
        g.stabilizing = same_subgroup(sequence[g.indices.back()], V);
        const std::string tag = "group (" + std::to_string(g.q.t) + "," + std::to_string(g.q.r) + ")";
        if (!g.divides) throw consistency_error(tag + ": t' does not divide t_V");
        if (!g.bounded) throw consistency_error(tag + ": t' r' exceeds t_V r_V");
        if (!g.stabilizing && !g.strict) throw consistency_error(tag + ": non-stabilizing group without strict inequality");
    }
    return out;
}

}  // namespace lamplighter
