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
 * @file irs.hpp
 * @brief Exact window marginals of shift-invariant random subgroups of the
 * lamp group, the block construction mu_m, and Monte Carlo samplers.
 */

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "random.hpp"
#include "window.hpp"

namespace lamplighter {

using Rational = boost::multiprecision::cpp_rational;

/// Exact finitely supported law on the subgroups of one window.
class WindowDistribution {
   public:
    WindowDistribution(std::size_t n, std::uint32_t p, Window w) : n_(n), p_(p), window_(w) {}

    static WindowDistribution point_mass(const WindowSubgroup& h) {
        WindowDistribution d(h.n(), h.p(), h.window());
        d.add(h, Rational(1));
        return d;
    }

    void add(const WindowSubgroup& h, const Rational& prob) {
        if (h.window() != window_ || h.n() != n_ || h.p() != p_) throw std::invalid_argument("subgroup lives on another window");
        if (prob < 0) throw std::domain_error("negative probability");
        Rational& slot = mass_[h];
        slot += prob;
        if (slot == 0) mass_.erase(h);
    }

    std::size_t n() const noexcept { return n_; }
    std::uint32_t p() const noexcept { return p_; }
    const Window& window() const noexcept { return window_; }
    const std::map<WindowSubgroup, Rational>& support() const noexcept { return mass_; }
    std::size_t size() const noexcept { return mass_.size(); }

    Rational probability(const WindowSubgroup& h) const {
        const auto it = mass_.find(h);
        return it == mass_.end() ? Rational(0) : it->second;
    }
    Rational total() const {
        Rational t = 0;
        for (const auto& [h, q] : mass_) t += q;
        return t;
    }

    friend bool operator==(const WindowDistribution&, const WindowDistribution&) = default;

   private:
    std::size_t n_;
    std::uint32_t p_;
    Window window_;
    std::map<WindowSubgroup, Rational> mass_;
};

/// Pushforward under H -> H cap X^{sub}.
inline WindowDistribution project(const WindowDistribution& d, Window sub) {
    if (!d.window().contains(sub)) throw std::domain_error("subwindow is not nested in the window");
    WindowDistribution out(d.n(), d.p(), sub);
    for (const auto& [h, q] : d.support()) out.add(intersect_window(h, sub), q);
    return out;
}

/// Pushforward under the index shift by k positions.
inline WindowDistribution transport(const WindowDistribution& d, std::int64_t k) {
    WindowDistribution out(d.n(), d.p(), {d.window().lo + k, d.window().hi + k});
    for (const auto& [h, q] : d.support()) out.add(transport(h, k), q);
    return out;
}

/// L1 distance sum_H |d1(H) - d2(H)|.
inline Rational tv_distance(const WindowDistribution& a, const WindowDistribution& b) {
    if (a.window() != b.window()) throw std::domain_error("distributions live on different windows");
    Rational t = 0;
    for (const auto& [h, q] : a.support()) t += abs(q - b.probability(h));
    for (const auto& [h, q] : b.support())
        if (a.probability(h) == 0) t += q;
    return t;
}

/// Law of the direct sum of independent pieces on consecutive windows.
inline WindowDistribution convolve(const std::vector<WindowDistribution>& pieces) {
    if (pieces.empty()) throw std::domain_error("convolution of no pieces");
    WindowDistribution acc = pieces.front();
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        WindowDistribution next(acc.n(), acc.p(), {acc.window().lo, pieces[i].window().hi});
        for (const auto& [h, q] : acc.support())
            for (const auto& [g, r] : pieces[i].support()) next.add(direct_sum({h, g}), q * r);
        acc = std::move(next);
    }
    return acc;
}

/// Weighted average of laws on one window.
inline WindowDistribution mix(const std::vector<std::pair<Rational, WindowDistribution>>& parts) {
    if (parts.empty()) throw std::domain_error("mixture of no parts");
    WindowDistribution out(parts.front().second.n(), parts.front().second.p(), parts.front().second.window());
    for (const auto& [w, d] : parts)
        for (const auto& [h, q] : d.support()) out.add(h, w * q);
    return out;
}

/// A random subgroup of R^n known through its window marginals.
class LazyIRS {
   public:
    using oracle = std::function<WindowDistribution(Window)>;

    LazyIRS(std::size_t n, std::uint32_t p, std::string tag, bool invariant, oracle marginal)
        : n_(n), p_(p), tag_(std::move(tag)), invariant_(invariant), marginal_(std::move(marginal)) {}

    std::size_t n() const noexcept { return n_; }
    std::uint32_t p() const noexcept { return p_; }
    const std::string& tag() const noexcept { return tag_; }
    bool invariant() const noexcept { return invariant_; }
    WindowDistribution marginal(Window w) const { return marginal_(w); }

   private:
    std::size_t n_;
    std::uint32_t p_;
    std::string tag_;
    bool invariant_;
    oracle marginal_;
};

/// Point mass at the whole lamp group A.
inline LazyIRS irs_full(std::size_t n, std::uint32_t p) {
    return LazyIRS(n, p, "full", true, [n, p](Window w) { return WindowDistribution::point_mass(WindowSubgroup::full(n, p, w)); });
}

/// Point mass at the trivial subgroup.
inline LazyIRS irs_trivial(std::size_t n, std::uint32_t p) {
    return LazyIRS(n, p, "trivial", true, [n, p](Window w) { return WindowDistribution::point_mass(WindowSubgroup::trivial(n, p, w)); });
}

/// Uniform law on the shift orbit {x^k U : 0 <= k < e(U)} of a periodic subgroup.
inline LazyIRS irs_orbit(const SubmoduleGens& u) {
    const SubmoduleGens c = canonical(u);
    return LazyIRS(u.n(), u.p(), "orbit", true, [c](Window w) {
        const std::int64_t e = c.period();
        WindowDistribution d(c.n(), c.p(), w);
        for (std::int64_t k = 0; k < e; ++k) d.add(window_intersection(shift(c, k), w), Rational(1, e));
        return d;
    });
}

inline LazyIRS irs_mixture(std::vector<std::pair<Rational, LazyIRS>> parts) {
    if (parts.empty()) throw std::domain_error("mixture of no parts");
    Rational total = 0;
    bool invariant = true;
    for (const auto& [w, mu] : parts) {
        if (w < 0) throw std::domain_error("negative mixture weight");
        if (mu.n() != parts.front().second.n() || mu.p() != parts.front().second.p())
            throw std::invalid_argument("mixture parts live in different ambients");
        total += w;
        invariant = invariant && mu.invariant();
    }
    if (total != 1) throw std::domain_error("mixture weights must sum to 1");
    const std::size_t n = parts.front().second.n();
    const std::uint32_t p = parts.front().second.p();
    return LazyIRS(n, p, "mixture", invariant, [parts = std::move(parts)](Window w) {
        std::vector<std::pair<Rational, WindowDistribution>> m;
        for (const auto& [wt, mu] : parts) m.emplace_back(wt, mu.marginal(w));
        return mix(m);
    });
}

/**
 * Pieces of a window cut by the block grid of shift term k: blocks of length
 * m start at the positions congruent to -k modulo m.  Each piece is returned
 * with the start of its block.
 */
inline std::vector<std::pair<Window, std::int64_t>> block_pieces(std::int64_t m, std::int64_t k, Window w) {
    if (m <= 0) throw std::domain_error("block length must be positive");
    std::vector<std::pair<Window, std::int64_t>> out;
    for (std::int64_t b = w.lo - floor_mod(w.lo + k, m); b <= w.hi; b += m)
        out.push_back({{std::max(w.lo, b), std::min(w.hi, b + m - 1)}, b});
    return out;
}

/// Window marginal of the k-th shift term of mu_m: independent blocks with law P^{0,m-1} mu.
inline WindowDistribution mu_m_shift_term(const LazyIRS& mu, std::int64_t m, std::int64_t k, Window w) {
    const WindowDistribution block = mu.marginal({0, m - 1});
    std::vector<WindowDistribution> pieces;
    for (const auto& [piece, start] : block_pieces(m, k, w))
        pieces.push_back(transport(project(block, {piece.lo - start, piece.hi - start}), start));
    return convolve(pieces);
}

/// Window marginal of mu_m = (1/m) sum_{k<m} (shift term k).
inline WindowDistribution mu_m_marginal(const LazyIRS& mu, std::int64_t m, Window w) {
    if (m <= 0) throw std::domain_error("m must be positive");
    if (!mu.invariant()) throw precondition_error("mu_m needs a shift-invariant mu");
    std::vector<std::pair<Rational, WindowDistribution>> terms;
    for (std::int64_t k = 0; k < m; ++k) terms.emplace_back(Rational(1, m), mu_m_shift_term(mu, m, k, w));
    return mix(terms);
}

inline LazyIRS irs_mu_m(const LazyIRS& mu, std::int64_t m) {
    return LazyIRS(mu.n(), mu.p(), "mu_m", true, [mu, m](Window w) { return mu_m_marginal(mu, m, w); });
}

struct BoundReport {
    std::int64_t m = 0;
    std::int64_t j = 0;
    Rational tv;
    Rational sharp_bound;         ///< 2 j / m
    Rational conservative_bound;  ///< 2 (j + 1) / m
    bool pass = false;            ///< tv <= conservative bound
    bool literal_held = false;    ///< tv <= 2 j / m
};

/// Exact TV between the [0, j] marginals of mu_m and mu, against both bounds.
inline BoundReport check_bound(const LazyIRS& mu, std::int64_t m, std::int64_t j) {
    if (j < 0) throw std::domain_error("j must be nonnegative");
    const Window w{0, j};
    BoundReport r;
    r.m = m;
    r.j = j;
    r.tv = tv_distance(mu_m_marginal(mu, m, w), mu.marginal(w));
    r.sharp_bound = Rational(2 * j, m);
    r.conservative_bound = Rational(2 * (j + 1), m);
    r.pass = r.tv <= r.conservative_bound;
    r.literal_held = r.tv <= r.sharp_bound;
    return r;
}

/// Exact categorical sampling from a window law through a common denominator.
class CategoricalSampler {
   public:
    explicit CategoricalSampler(const WindowDistribution& d) {
        if (d.total() != 1) throw std::domain_error("law does not sum to 1");
        boost::multiprecision::cpp_int den = 1;
        for (const auto& [h, q] : d.support()) den = boost::multiprecision::lcm(den, denominator(q));
        if (den > std::numeric_limits<std::uint64_t>::max())
            throw resource_error("common denominator too large for exact sampling", 0);
        den_ = static_cast<std::uint64_t>(den);
        std::uint64_t acc = 0;
        for (const auto& [h, q] : d.support()) {
            acc += static_cast<std::uint64_t>(numerator(q) * (den / denominator(q)));
            atoms_.push_back(h);
            cumulative_.push_back(acc);
        }
    }

    std::size_t draw_index(SplitMix64& rng) const {
        const std::uint64_t u = rng.uniform(den_);
        return static_cast<std::size_t>(std::upper_bound(cumulative_.begin(), cumulative_.end(), u) - cumulative_.begin());
    }
    const WindowSubgroup& draw(SplitMix64& rng) const { return atoms_[draw_index(rng)]; }
    const std::vector<WindowSubgroup>& atoms() const noexcept { return atoms_; }

   private:
    std::uint64_t den_ = 1;
    std::vector<WindowSubgroup> atoms_;
    std::vector<std::uint64_t> cumulative_;
};

/**
 * Draws from the [window] marginal of mu_m: a uniform shift k in [0, m),
 * independent blocks from P^{0,m-1} mu, and the direct sum of their
 * intersections with the window.
 */
class WindowSampler {
   public:
    WindowSampler(const LazyIRS& mu, std::int64_t m, Window w)
        : m_(m), window_(w), block_(mu.marginal({0, m - 1})) {
        if (m <= 0) throw std::domain_error("m must be positive");
    }

    WindowSubgroup draw(SplitMix64& rng) {
        const auto k = static_cast<std::int64_t>(rng.uniform(static_cast<std::uint64_t>(m_)));
        std::vector<WindowSubgroup> parts;
        for (const auto& [piece, start] : block_pieces(m_, k, window_)) {
            const std::size_t idx = block_.draw_index(rng);
            const Window rel{piece.lo - start, piece.hi - start};
            auto key = std::make_pair(idx, rel);
            auto it = cache_.find(key);
            if (it == cache_.end()) it = cache_.emplace(key, intersect_window(block_.atoms()[idx], rel)).first;
            parts.push_back(transport(it->second, start));
        }
        return direct_sum(parts);
    }

   private:
    std::int64_t m_;
    Window window_;
    CategoricalSampler block_;
    std::map<std::pair<std::size_t, Window>, WindowSubgroup> cache_;
};

/// One reproducible draw from the window marginal of mu_m.
inline WindowSubgroup sample_window(const LazyIRS& mu, std::int64_t m, Window w, std::uint64_t seed) {
    WindowSampler s(mu, m, w);
    SplitMix64 rng(seed);
    return s.draw(rng);
}

/// Empirical law of `draws` samples; draw i uses the stream derive_seed(seed, i).
inline WindowDistribution sample_empirical(const LazyIRS& mu, std::int64_t m, Window w, std::uint64_t seed,
                                           std::uint64_t draws) {
    if (draws == 0) throw std::domain_error("need at least one draw");
    WindowSampler s(mu, m, w);
    std::map<WindowSubgroup, std::uint64_t> counts;
    for (std::uint64_t i = 0; i < draws; ++i) {
        SplitMix64 rng(derive_seed(seed, i));
        ++counts[s.draw(rng)];
    }
    WindowDistribution out(mu.n(), mu.p(), w);
    for (const auto& [h, c] : counts) out.add(h, Rational(c, draws));
    return out;
}

/// 3 sqrt(S / T): the Monte Carlo tolerance for an L1 distance over S atoms and T draws.
inline double statistical_tolerance(std::size_t support, std::uint64_t trials) {
    return 3.0 * std::sqrt(static_cast<double>(support) / static_cast<double>(trials));
}

/// H cap (coordinate subspace of the cells with keep[cell] set), inside the same window.
inline WindowSubgroup restrict_to_cells(const WindowSubgroup& h, const std::vector<bool>& keep) {
    const std::size_t n = h.n();
    std::vector<std::size_t> drop;
    for (std::size_t cell = 0; cell < keep.size(); ++cell)
        if (!keep[cell])
            for (std::size_t c = 0; c < n; ++c) drop.push_back(cell * n + c);
    std::vector<FpRow> outside;
    for (const auto& b : h.basis()) {
        FpRow o;
        for (std::size_t k : drop) o.push_back(b[k]);
        outside.push_back(std::move(o));
    }
    std::vector<FpRow> rows;
    for (const auto& c : kernel_of(outside, h.p())) {
        FpRow v(h.dimension_of_space(), 0);
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t k = 0; k < v.size(); ++k) v[k] = mod_add(v[k], mod_mul(c[i], h.basis()[i][k], h.p()), h.p());
        rows.push_back(std::move(v));
    }
    return WindowSubgroup(n, h.p(), h.window(), std::move(rows));
}

/// Sum of two subgroups of one window.
inline WindowSubgroup subgroup_sum(const WindowSubgroup& a, const WindowSubgroup& b) {
    std::vector<FpRow> rows = a.basis();
    rows.insert(rows.end(), b.basis().begin(), b.basis().end());
    return WindowSubgroup(a.n(), a.p(), a.window(), std::move(rows));
}

/// lambda(A_n delta T A_n) for the majority set A_n, n odd: C(n-1, (n-1)/2) / 2^n.
inline Rational majority_symmetric_difference(std::int64_t n_ai) {
    if (n_ai <= 0 || n_ai % 2 == 0) throw std::domain_error("majority sets need an odd length");
    boost::multiprecision::cpp_int c = 1;
    const std::int64_t h = (n_ai - 1) / 2;
    for (std::int64_t i = 1; i <= h; ++i) c = c * (n_ai - 1 - h + i) / i;
    boost::multiprecision::cpp_int two_n = 1;
    two_n <<= n_ai;
    return Rational(c, two_n);
}

struct PsiMixReport {
    std::int64_t n_ai = 0;
    std::uint64_t trials = 0;
    WindowDistribution empirical;
    WindowDistribution target;
    Rational tv;
    double tolerance = 0;
    Rational lambda_all_j;  ///< fraction of trials with every window cell in J_n
    Rational lambda_all_k;  ///< fraction of trials with every window cell in K_n
    double deviation_bound = 0;
    Rational invariance_estimate;  ///< empirical lambda(A_n delta T A_n)
    Rational invariance_exact;
    bool within_bound = false;
};

/**
 * Monte Carlo for the splice Psi_n(H1, H2, x) = (H1 cap X^{J_n(x)}) + (H2 cap X^{K_n(x)})
 * with H1 ~ mu1, H2 ~ mu2 independent and x a fair coin sequence.  The cell c
 * lies in J_n(x) when x_c + ... + x_{c+n-1} > n / 2 (the majority set A_n
 * translated to c) and in K_n(x) otherwise.  Trial i uses the stream
 * derive_seed(seed, i).
 */
inline PsiMixReport psi_mix(const LazyIRS& mu1, const LazyIRS& mu2, std::int64_t n_ai, Window w,
                            std::uint64_t trials, std::uint64_t seed) {
    if (n_ai <= 0 || n_ai % 2 == 0) throw std::domain_error("n_ai must be odd so that the majority set has measure 1/2");
    if (trials == 0) throw std::domain_error("need at least one trial");
    if (mu1.n() != mu2.n() || mu1.p() != mu2.p()) throw std::invalid_argument("mu1 and mu2 live in different ambients");
    const WindowDistribution m1 = mu1.marginal(w), m2 = mu2.marginal(w);
    const CategoricalSampler s1(m1), s2(m2);
    const std::size_t cells = w.cells();
    const std::size_t coins = cells + static_cast<std::size_t>(n_ai);  // x_lo .. x_{hi + n_ai}
    const std::size_t words = (coins + 63) / 64;

    std::map<WindowSubgroup, std::uint64_t> counts;
    std::uint64_t all_j = 0, all_k = 0, flips = 0;
    std::vector<std::uint64_t> x(words);
    std::vector<bool> in_j(cells);
    auto bit = [&](std::size_t i) { return (x[i / 64] >> (i % 64)) & 1U; };
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        SplitMix64 rng(derive_seed(seed, trial));
        const WindowSubgroup& h1 = s1.draw(rng);
        const WindowSubgroup& h2 = s2.draw(rng);
        for (auto& word : x) word = rng.next();
        // Sliding window sums of n_ai coins starting at each cell, plus one more for T A_n.
        std::int64_t sum = 0;
        for (std::size_t i = 0; i < static_cast<std::size_t>(n_ai); ++i) sum += static_cast<std::int64_t>(bit(i));
        bool any_j = false, any_k = false;
        for (std::size_t c = 0; c < cells; ++c) {
            if (c > 0) sum += static_cast<std::int64_t>(bit(c + n_ai - 1)) - static_cast<std::int64_t>(bit(c - 1));
            in_j[c] = 2 * sum > n_ai;
            (in_j[c] ? any_j : any_k) = true;
        }
        {
            std::int64_t s0 = 0, s1 = 0;
            for (std::size_t i = 0; i < static_cast<std::size_t>(n_ai); ++i) {
                s0 += static_cast<std::int64_t>(bit(i));
                s1 += static_cast<std::int64_t>(bit(i + 1));
            }
            if ((2 * s0 > n_ai) != (2 * s1 > n_ai)) ++flips;
        }
        if (!any_k) ++all_j;
        if (!any_j) ++all_k;
        std::vector<bool> in_k(cells);
        for (std::size_t c = 0; c < cells; ++c) in_k[c] = !in_j[c];
        ++counts[subgroup_sum(restrict_to_cells(h1, in_j), restrict_to_cells(h2, in_k))];
    }

    PsiMixReport r{n_ai, trials, WindowDistribution(mu1.n(), mu1.p(), w), mix({{Rational(1, 2), m1}, {Rational(1, 2), m2}}),
                   0, 0, 0, 0, 0, 0, 0, false};
    for (const auto& [h, c] : counts) r.empirical.add(h, Rational(c, trials));
    r.tv = tv_distance(r.empirical, r.target);
    r.tolerance = statistical_tolerance(r.target.size(), trials);
    r.lambda_all_j = Rational(all_j, trials);
    r.lambda_all_k = Rational(all_k, trials);
    r.deviation_bound = 2.0 * (1.0 - static_cast<double>(r.lambda_all_j) - static_cast<double>(r.lambda_all_k)) + r.tolerance;
    r.invariance_estimate = Rational(flips, trials);
    r.invariance_exact = majority_symmetric_difference(n_ai);
    r.within_bound = static_cast<double>(r.tv) <= r.deviation_bound;
    return r;
}

}  // namespace lamplighter
