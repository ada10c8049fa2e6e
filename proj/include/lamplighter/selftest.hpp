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
 * @file selftest.hpp
 * @brief The acceptance suite: one pass/fail line per criterion.
 *
 * Every random choice is drawn from SplitMix64 streams derived from the
 * master seed, so the report is a pure function of the seed.
 */

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cbrank.hpp"
#include "construct.hpp"
#include "instances.hpp"
#include "irs.hpp"

namespace lamplighter {

inline constexpr std::uint64_t default_selftest_seed = 1;

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace acceptance {

inline std::string q_text(const QPoint& q) { return "(" + std::to_string(q.t) + "," + std::to_string(q.r) + ")"; }

inline CriterionResult counting() {
    CriterionResult r{1, "submodule counting", true, ""};
    const std::vector<std::tuple<std::uint32_t, std::size_t, std::size_t>> cases = {
        {2, 1, 4}, {2, 2, 3}, {3, 1, 3}, {3, 2, 2}};
    std::size_t checked = 0;
    for (const auto& [p, k, amax] : cases)
        for (std::size_t a = 0; a <= amax; ++a) {
            const auto got = enumerate_submodules(p, k, a).size();
            const auto want = count_submodules_formula(p, k, a);
            ++checked;
            if (BigInt(got) != want) {
                r.pass = false;
                r.detail += " mismatch (p,k,a)=(" + std::to_string(p) + "," + std::to_string(k) + "," + std::to_string(a) +
                            "): " + std::to_string(got) + " vs " + want.str() + ";";
            }
        }
    r.detail = std::to_string(checked) + " cases" + (r.pass ? ", enumeration = p^{ak} - p^{(a-1)k}" : r.detail);
    return r;
}

inline CriterionResult rank_of_free() {
    CriterionResult r{2, "rk_m(R^n) = n m", true, ""};
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::int64_t m = 1; m <= 4; ++m) {
            const auto got = rk_m(SubmoduleGens::full(n, 2), m);
            if (got != n * static_cast<std::size_t>(m)) {
                r.pass = false;
                r.detail += " n=" + std::to_string(n) + " m=" + std::to_string(m) + " gave " + std::to_string(got) + ";";
            }
        }
    if (r.pass) r.detail = "n <= 3, m <= 4";
    return r;
}

inline CriterionResult multiplicativity(std::uint64_t seed) {
    CriterionResult r{3, "rk_{be}(U) = b rk_e(U)", true, ""};
    for (std::uint64_t i = 0; i < 100; ++i) {
        SplitMix64 rng(derive_seed(seed, 3, i));
        const std::size_t n = 1 + rng.uniform(2);
        const std::uint32_t p = rng.uniform(2) ? 3 : 2;
        const auto e = static_cast<std::int64_t>(1 + rng.uniform(4));
        const auto b = static_cast<std::int64_t>(1 + rng.uniform(3));
        const SubmoduleGens u = random_submodule(n, p, e, 1 + rng.uniform(2), rng);
        const auto lhs = rk_m(u, b * e), rhs = static_cast<std::size_t>(b) * rk_m(u, e);
        if (lhs != rhs) {
            r.pass = false;
            r.detail += " instance " + std::to_string(i) + ": " + std::to_string(lhs) + " vs " + std::to_string(rhs) + ";";
        }
    }
    if (r.pass) r.detail = "100 random U, e <= 4, b <= 3";
    return r;
}

inline CriterionResult constructions() {
    CriterionResult r{4, "prescribed e(U) = b, rk_b(U) = r", true, ""};
    std::size_t checked = 0;
    for (std::uint32_t p : {2U, 3U})
        for (std::size_t n = 1; n <= 2; ++n)
            for (std::int64_t b = 1; b <= 4; ++b)
                for (std::int64_t rank = 1; rank <= static_cast<std::int64_t>(n) * b; ++rank) {
                    const SubmoduleGens u = construct_prescribed(n, p, b, rank);
                    const std::int64_t e = exponent(u);
                    const auto rk = static_cast<std::int64_t>(rk_m(u, b));
                    ++checked;
                    if (e != b || rk != rank) {
                        r.pass = false;
                        r.detail += " (p,n,b,r)=(" + std::to_string(p) + "," + std::to_string(n) + "," + std::to_string(b) + "," +
                                    std::to_string(rank) + ") gave e=" + std::to_string(e) + " rk=" + std::to_string(rk) + ";";
                    }
                }
    if (r.pass) r.detail = std::to_string(checked) + " cases, p in {2,3}, n <= 2, b <= 4";
    return r;
}

inline CriterionResult poset_levels() {
    CriterionResult r{5, "CB levels of Q", true, ""};
    const auto P = q_truncation(8, 12);
    const auto level = cb_levels(P);
    for (std::size_t i = 0; i < P.size(); ++i)
        if (static_cast<std::int64_t>(level[i]) != q_level_closed_form(P.elements()[i])) {
            r.pass = false;
            r.detail += " " + q_text(P.elements()[i]) + " has level " + std::to_string(level[i]) + ";";
        }
    const auto cert = rank_unbounded_certificate({8});
    std::string chain;
    const std::vector<std::size_t> want = {2, 4, 8};
    for (std::size_t k = 0; k < cert.rows.back().chain.size(); ++k) {
        const auto& [q, l] = cert.rows.back().chain[k];
        chain += (k ? " " : "") + q_text(q) + "=" + std::to_string(l);
        if (k >= want.size() || l != want[k]) r.pass = false;
    }
    if (cert.rows.back().chain.size() != want.size()) r.pass = false;
    r.detail = std::to_string(P.size()) + " points with level = t r" + (r.pass ? "" : " FAILED:" + r.detail) + "; chain " + chain;
    return r;
}

inline CriterionResult approach_pipeline(std::uint64_t seed) {
    CriterionResult r{6, "approach sequences converge from below", true, ""};
    std::string summary;
    for (std::uint64_t i = 0; i < 10; ++i) {
        SplitMix64 rng(derive_seed(seed, 6, i));
        const std::uint32_t p = rng.uniform(2) ? 3 : 2;
        SubmoduleGens u = SubmoduleGens::zero(1, p);
        InvariantReport inv{};
        do {
            const auto e = static_cast<std::int64_t>(1 + rng.uniform(3));
            u = random_submodule(1, p, e, rng.uniform(2), rng);
            inv = r_value(u);
        } while (inv.r == 0);
        const auto t = static_cast<std::int64_t>(1 + rng.uniform(4));
        const SubgroupTriple V = make_triple(t * inv.e, u, random_vector(1, p, -2, 2, rng));
        const QPoint qv = phi_encoding(V);
        std::vector<QPoint> below;
        for (std::int64_t tp = 1; tp <= qv.t; ++tp)
            for (std::int64_t rp = 0; tp * rp < qv.t * qv.r; ++rp)
                if (q_less({tp, rp}, qv)) below.push_back({tp, rp});
        const QPoint target = below[rng.uniform(below.size())];
        const std::int64_t horizon = 25;
        const auto seq = build_approach_sequence(V, target, static_cast<std::size_t>(horizon));
        bool ok = true;
        for (const auto& Vm : seq)
            if (phi_encoding(Vm) != target) ok = false;
        const BallSpec ball{4, 2 * V.s};
        const auto conv = converges_on_ball([&](std::int64_t m) { return seq[static_cast<std::size_t>(m - 1)]; }, V, ball, horizon);
        std::string verdict;
        try {
            const auto cl = classify_limit(seq, V);
            const bool strict = cl.groups.size() == 1 && cl.groups[0].q == target && cl.groups[0].strict && cl.groups[0].divides;
            if (!strict) ok = false;
        } catch (const consistency_error& e) {
            ok = false;
            verdict = std::string(" classify: ") + e.what();
        }
        ok = ok && conv.converged;
        summary += " [p=" + std::to_string(p) + " s=" + std::to_string(V.s) + " e=" + std::to_string(inv.e) + " " + q_text(qv) + "->" +
                   q_text(target) + " " + (conv.converged ? "m0=" + std::to_string(conv.stabilization_index) : "no stabilization by 25") +
                   verdict + "]";
        if (!ok) r.pass = false;
    }
    r.detail = "10 instances, ball radius 4, shift bound 2s, horizon 25:" + summary;
    return r;
}

inline CriterionResult conjugation(std::uint64_t seed) {
    CriterionResult r{7, "conjugation invariance", true, ""};
    std::map<std::pair<std::size_t, std::uint32_t>, std::vector<GroupElement>> balls;
    std::size_t checks = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        SplitMix64 rng(derive_seed(seed, 7, i));
        const std::size_t n = 1 + rng.uniform(2);
        const std::uint32_t p = rng.uniform(2) ? 3 : 2;
        const auto s = static_cast<std::int64_t>(1 + rng.uniform(4));
        const auto ds = divisors(s);
        const std::int64_t e = ds[rng.uniform(ds.size())];
        const SubgroupTriple V = random_triple(n, p, s, e, rng);
        const GroupElement g = random_element(n, p, 2, 3, rng);
        const SubgroupTriple W = conjugate(g, V);
        bool ok = pi1(W) == pi1(V) && phi_encoding(W) == phi_encoding(V);
        auto& ball = balls[{n, p}];
        if (ball.empty()) ball = word_ball(n, p, 3);
        const GroupElement gi = inverse(g);
        for (const auto& h : ball) {
            ++checks;
            if (triple_membership(W, multiply(multiply(g, h), gi)) != triple_membership(V, h)) ok = false;
        }
        if (!ok) {
            r.pass = false;
            r.detail += " instance " + std::to_string(i) + ";";
        }
    }
    r.detail = "200 random (g, V), " + std::to_string(checks) + " word-ball memberships" + (r.pass ? "" : ", failing:" + r.detail);
    return r;
}

/// The invariant measures of criteria 8 and 9 (n = 1, p = 2).
inline std::vector<std::pair<std::string, LazyIRS>> measure_grid(std::uint64_t seed) {
    std::vector<std::pair<std::string, LazyIRS>> grid;
    grid.emplace_back("delta_A", irs_full(1, 2));
    grid.emplace_back("delta_0", irs_trivial(1, 2));
    grid.emplace_back("half-half", irs_mixture({{Rational(1, 2), irs_full(1, 2)}, {Rational(1, 2), irs_trivial(1, 2)}}));
    SplitMix64 rng(derive_seed(seed, 8));
    std::vector<std::pair<Rational, LazyIRS>> parts;
    std::vector<std::int64_t> w;
    for (int k = 0; k < 3; ++k) w.push_back(static_cast<std::int64_t>(1 + rng.uniform(4)));
    const std::int64_t total = w[0] + w[1] + w[2];
    for (int k = 0; k < 3; ++k) {
        const auto e = static_cast<std::int64_t>(1 + rng.uniform(3));
        parts.emplace_back(Rational(w[static_cast<std::size_t>(k)], total), irs_orbit(random_submodule(1, 2, e, 1, rng)));
    }
    grid.emplace_back("3-atom", irs_mixture(std::move(parts)));
    return grid;
}

inline CriterionResult stationarity(std::uint64_t seed) {
    CriterionResult r{8, "mu_m stationarity and block locality", true, ""};
    std::size_t checks = 0;
    for (const auto& [name, mu] : measure_grid(seed))
        for (std::int64_t m = 1; m <= 6; ++m)
            for (std::int64_t j = 0; j <= 2; ++j) {
                const Window w0{0, j};
                const WindowDistribution base = mu_m_marginal(mu, m, w0);
                for (std::int64_t a = 1; a <= m; ++a) {
                    ++checks;
                    if (mu_m_marginal(mu, m, {a, a + j}) != transport(base, a)) {
                        r.pass = false;
                        r.detail += " " + name + " m=" + std::to_string(m) + " j=" + std::to_string(j) + " a=" + std::to_string(a) + ";";
                    }
                }
                const WindowDistribution target = mu.marginal(w0);
                for (std::int64_t k = 0; j + k < m; ++k) {
                    ++checks;
                    if (mu_m_shift_term(mu, m, k, w0) != target) {
                        r.pass = false;
                        r.detail += " " + name + " locality m=" + std::to_string(m) + " k=" + std::to_string(k) + ";";
                    }
                }
            }
    r.detail = std::to_string(checks) + " exact equalities over 4 measures, m <= 6, j <= 2" + (r.pass ? "" : ", failing:" + r.detail);
    return r;
}

inline CriterionResult tv_bound(std::uint64_t seed) {
    CriterionResult r{9, "TV(P mu_m, P mu) <= 2(j+1)/m", true, ""};
    std::string table;
    bool literal_all = true;
    for (const auto& [name, mu] : measure_grid(seed))
        for (std::int64_t j = 0; j <= 2; ++j) {
            std::vector<BoundReport> reps;
            for (std::int64_t m : {2, 4, 8}) reps.push_back(check_bound(mu, m, j));
            table += " " + name + " j=" + std::to_string(j) + ":";
            for (const auto& b : reps) {
                table += " " + b.tv.str();
                if (!b.pass) r.pass = false;
                if (!b.literal_held) literal_all = false;
            }
            for (std::size_t k = 1; k < reps.size(); ++k)
                if (reps[k].tv > reps[k - 1].tv) r.pass = false;
            // Strict decrease is required wherever mu_2 differs from mu on the window.
            if (reps.front().tv > 0 && !(reps.back().tv < reps.front().tv)) r.pass = false;
        }
    r.detail = "TV at m=2,4,8 by (mu, j):" + table + "; literal 2j/m bound " + (literal_all ? "held in every case" : "failed in some case");
    return r;
}

inline CriterionResult sampler_law(std::uint64_t seed) {
    CriterionResult r{10, "sampler law", true, ""};
    const LazyIRS mu = irs_mixture({{Rational(1, 2), irs_full(1, 2)}, {Rational(1, 2), irs_trivial(1, 2)}});
    const Window w{0, 1};
    const WindowDistribution exact = mu_m_marginal(mu, 4, w);
    const WindowDistribution emp = sample_empirical(mu, 4, w, derive_seed(seed, 10), 100000);
    const double tv = static_cast<double>(tv_distance(emp, exact));
    r.pass = tv <= 0.02;
    std::ostringstream os;
    os << "1e5 draws, m=4, window [0,1]: TV = " << tv << " (limit 0.02)";
    r.detail = os.str();
    return r;
}

inline CriterionResult psi_mixing(std::uint64_t seed) {
    CriterionResult r{11, "Psi mixing", true, ""};
    std::ostringstream os;
    double prev_tv = 0, prev_inv = 0;
    bool first = true;
    os << "1e5 trials, window [0,0]:";
    for (std::int64_t nai : {11, 51, 201}) {
        const auto rep = psi_mix(irs_full(1, 2), irs_trivial(1, 2), nai, {0, 0}, 100000, derive_seed(seed, 11));
        const double tv = static_cast<double>(rep.tv), inv = static_cast<double>(rep.invariance_estimate);
        os << " n=" << nai << " TV=" << tv << " lambda(A delta TA)=" << inv << " (exact " << static_cast<double>(rep.invariance_exact)
           << ");";
        if (!first && !(tv < prev_tv)) {
            r.pass = false;
            os << " TV did not decrease;";
        }
        if (!first && !(inv < prev_inv)) {
            r.pass = false;
            os << " invariance estimate did not decrease;";
        }
        if (nai == 201 && tv > 0.05) r.pass = false;
        prev_tv = tv;
        prev_inv = inv;
        first = false;
    }
    r.detail = os.str();
    return r;
}

}  // namespace acceptance

/// Criteria 1-11.
inline std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
    using namespace acceptance;
    return {counting(),         rank_of_free(),      multiplicativity(seed), constructions(),
            poset_levels(),     approach_pipeline(seed), conjugation(seed),  stationarity(seed),
            tv_bound(seed),     sampler_law(seed),   psi_mixing(seed)};
}

inline std::string format_line(const CriterionResult& r) {
    return std::string(r.pass ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + ": " + r.detail + "\n";
}

inline std::string format_report(std::uint64_t seed, const std::vector<CriterionResult>& results) {
    std::string s = "acceptance seed=" + std::to_string(seed) + "\n";
    for (const auto& r : results) s += format_line(r);
    return s;
}

/// Criteria 1-11 run twice, plus criterion 12: both reports are byte-identical.
inline std::vector<CriterionResult> run_full_acceptance(std::uint64_t seed) {
    auto first = run_acceptance(seed);
    const auto second = run_acceptance(seed);
    const bool same = format_report(seed, first) == format_report(seed, second);
    first.push_back({12, "determinism", same, same ? "two runs gave byte-identical reports" : "two runs differ"});
    return first;
}

}  // namespace lamplighter
