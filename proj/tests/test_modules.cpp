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

#include <gtest/gtest.h>

#include <set>

#include "lamplighter/construct.hpp"
#include "lamplighter/instances.hpp"

using namespace lamplighter;

namespace {

LaurentVector vec(std::uint32_t p, std::vector<LaurentPoly> c) {
    (void)p;
    return LaurentVector(std::move(c));
}

LaurentPoly lp(std::uint32_t p, std::vector<coeff_t> c, std::int64_t off = 0) { return LaurentPoly(Poly(p, std::move(c)), off); }

// Oracle for the number of submodules of codimension a in R^k: a quotient is
// F_p^a with an invertible x-action A and k generating images, counted up to
// the free action of GL_a(F_p) on bases.
std::uint64_t count_by_quotients(std::uint32_t p, std::size_t k, std::size_t a) {
    if (a == 0) return 1;
    const std::size_t entries = a * a;
    std::uint64_t invertible = 0, pairs = 0;
    const std::uint64_t vectors = ipow(p, a);
    auto digits = [&](std::uint64_t code, std::size_t len) {
        std::vector<coeff_t> d(len);
        for (auto& x : d) {
            x = static_cast<coeff_t>(code % p);
            code /= p;
        }
        return d;
    };
    auto rank = [&](std::vector<std::vector<coeff_t>> rows) {
        std::size_t r = 0;
        for (std::size_t c = 0; c < a && r < rows.size(); ++c) {
            std::size_t piv = r;
            while (piv < rows.size() && rows[piv][c] == 0) ++piv;
            if (piv == rows.size()) continue;
            std::swap(rows[r], rows[piv]);
            const coeff_t inv = mod_inv(rows[r][c], p);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == r || rows[i][c] == 0) continue;
                const coeff_t f = mod_mul(rows[i][c], inv, p);
                for (std::size_t j = 0; j < a; ++j) rows[i][j] = mod_sub(rows[i][j], mod_mul(f, rows[r][j], p), p);
            }
            ++r;
        }
        return r;
    };
    for (std::uint64_t mc = 0; mc < ipow(p, entries); ++mc) {
        const auto flat = digits(mc, entries);
        std::vector<std::vector<coeff_t>> A(a, std::vector<coeff_t>(a));
        for (std::size_t i = 0; i < a; ++i)
            for (std::size_t j = 0; j < a; ++j) A[i][j] = flat[i * a + j];
        if (rank(A) != a) continue;
        ++invertible;
        auto apply = [&](const std::vector<coeff_t>& v) {
            std::vector<coeff_t> w(a, 0);
            for (std::size_t i = 0; i < a; ++i)
                for (std::size_t j = 0; j < a; ++j) w[i] = mod_add(w[i], mod_mul(A[i][j], v[j], p), p);
            return w;
        };
        for (std::uint64_t gc = 0; gc < ipow(vectors, k); ++gc) {
            std::vector<std::vector<coeff_t>> span;
            std::uint64_t code = gc;
            for (std::size_t g = 0; g < k; ++g) {
                auto v = digits(code % vectors, a);
                code /= vectors;
                for (std::size_t t = 0; t < a; ++t) {
                    span.push_back(v);
                    v = apply(v);
                }
            }
            if (rank(span) == a) ++pairs;
        }
    }
    return pairs / invertible;
}

std::size_t diagonal_degree_sum(const SubmoduleGens& u) {
    std::size_t s = 0;
    for (std::size_t k = 0; k < u.echelon().rank(); ++k) s += u.echelon().basis.at(k, u.echelon().pivots[k]).span();
    return s;
}

}  // namespace

TEST(Rescale, SplitsResidueClasses) {
    // n = 1, e = 2: 1 + x + x^3 -> (1 + y, 1 + y) in the basis (b, x b).
    const LaurentVector w = vec(2, {lp(2, {1, 1, 0, 1})});
    const auto r = rescale_vector(w, 2);
    ASSERT_EQ(r.size(), 2U);
    EXPECT_EQ(r[0], lp(2, {1}));
    EXPECT_EQ(r[1], lp(2, {1, 1}));
    EXPECT_EQ(unrescale_vector(r, 1, 2), w);
    const SubmoduleGens u(1, 2, 2, {w});
    EXPECT_THROW(rescale(u, 3), std::domain_error);
    EXPECT_EQ(rescale(u, 4).rows(), 2U);
}

TEST(Rescale, RoundTripRandom) {
    SplitMix64 rng(21);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 1 + rng.uniform(3);
        const auto e = static_cast<std::int64_t>(1 + rng.uniform(4));
        const LaurentVector w = random_vector(n, 3, -5, 5, rng);
        EXPECT_EQ(unrescale_vector(rescale_vector(w, e), n, e), w);
    }
}

TEST(Membership, GeneratorsAndShifts) {
    SplitMix64 rng(22);
    for (int i = 0; i < 100; ++i) {
        const auto e = static_cast<std::int64_t>(1 + rng.uniform(3));
        const SubmoduleGens u = random_submodule(2, 2, e, 2, rng);
        for (const auto& g : u.generators()) {
            EXPECT_TRUE(membership(u, g));
            EXPECT_TRUE(membership(u, g.shifted(e)));
            EXPECT_TRUE(membership(u, g.shifted(-3 * e)));
            EXPECT_TRUE(reduce_modulo(u, g).is_zero());
        }
    }
}

// Principal submodules f R of R: membership is divisibility of polynomials.
TEST(Membership, PrincipalMatchesDivisibility) {
    SplitMix64 rng(23);
    for (int i = 0; i < 300; ++i) {
        const LaurentVector f = random_vector(1, 3, 0, 2, rng);
        if (f[0].is_zero()) continue;
        const SubmoduleGens u(1, 3, 1, {f});
        const LaurentVector w = random_vector(1, 3, -3, 3, rng);
        const bool oracle = w[0].is_zero() || divides(f[0].body(), w[0].body());
        EXPECT_EQ(membership(u, w), oracle);
    }
}

TEST(Invariants, ExponentExamples) {
    EXPECT_EQ(exponent(SubmoduleGens::zero(2, 2)), 1);
    EXPECT_EQ(rank_of(SubmoduleGens::zero(2, 2)), 0U);
    EXPECT_EQ(exponent(SubmoduleGens::full(1, 2)), 1);
    const SubmoduleGens even(1, 2, 2, {vec(2, {lp(2, {1})})});
    EXPECT_EQ(exponent(even), 2);
    EXPECT_EQ(r_value(even), (InvariantReport{2, 1, 1}));
    // Period 4 presentation of R is still exponent 1.
    const SubmoduleGens r4(1, 2, 4, {vec(2, {lp(2, {1, 1, 1, 1})}), vec(2, {lp(2, {1})}), vec(2, {lp(2, {0, 1})}),
                                     vec(2, {lp(2, {0, 0, 1})})});
    EXPECT_EQ(exponent(r4), 1);
    EXPECT_TRUE(same_subgroup(r4, SubmoduleGens::full(1, 2)));
}

TEST(Invariants, RankOfFreeModule) {
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::int64_t m = 1; m <= 4; ++m) EXPECT_EQ(rk_m(SubmoduleGens::full(n, 3), m), n * static_cast<std::size_t>(m));
}

TEST(Invariants, Multiplicativity) {
    SplitMix64 rng(24);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 1 + rng.uniform(2);
        const auto e = static_cast<std::int64_t>(1 + rng.uniform(4));
        const auto b = static_cast<std::int64_t>(1 + rng.uniform(3));
        const SubmoduleGens u = random_submodule(n, 2, e, 1 + rng.uniform(2), rng);
        EXPECT_EQ(rk_m(u, b * e), static_cast<std::size_t>(b) * rk_m(u, e));
    }
}

TEST(Invariants, ExponentIsMinimalPeriod) {
    SplitMix64 rng(25);
    for (int i = 0; i < 100; ++i) {
        const auto s = static_cast<std::int64_t>(1 + rng.uniform(6));
        const SubmoduleGens u = random_submodule(1 + rng.uniform(2), 2, s, 1, rng);
        const std::int64_t e = exponent(u, s);
        EXPECT_EQ(s % e, 0);
        EXPECT_TRUE(same_subgroup(shift(u, e), u));
        for (std::int64_t d : divisors(e))
            if (d < e) {
                EXPECT_FALSE(same_subgroup(shift(u, d), u)) << "d=" << d;
            }
        const InvariantReport rep = r_value(u, s);
        EXPECT_GE(rep.rk, 0);
        EXPECT_LE(rep.rk, static_cast<std::int64_t>(u.n()) * rep.e);
        EXPECT_EQ(rep.r, static_cast<std::int64_t>(u.n()) * rep.e - rep.rk);
    }
}

TEST(Invariants, WithPeriodRequiresInvariance) {
    const SubmoduleGens even(1, 2, 2, {vec(2, {lp(2, {1})})});
    EXPECT_THROW(with_period(even, 3), precondition_error);
    EXPECT_TRUE(same_subgroup(with_period(even, 6), even));
    EXPECT_EQ(rank_of(with_period(even, 6)), 3U);
}

TEST(Canonical, OrderOfGeneratorsIrrelevant) {
    SplitMix64 rng(26);
    for (int i = 0; i < 50; ++i) {
        const auto e = static_cast<std::int64_t>(1 + rng.uniform(3));
        const LaurentVector a = random_vector(2, 3, -1, 2, rng), b = random_vector(2, 3, -1, 2, rng);
        const SubmoduleGens u(2, 3, e, {a, b}), w(2, 3, e, {b, a + b});
        const SubmoduleGens cu = canonical(u), cw = canonical(w);
        EXPECT_EQ(cu.period(), cw.period());
        EXPECT_EQ(cu.echelon(), cw.echelon());
        EXPECT_TRUE(is_subset(u, w) && is_subset(w, u));
    }
}

TEST(Counting, FormulaValues) {
    EXPECT_EQ(count_submodules_formula(5, 1, 0), 1);
    EXPECT_EQ(count_submodules_formula(2, 2, 1), 3);
    EXPECT_EQ(count_submodules_formula(3, 1, 2), 6);
    EXPECT_EQ(count_submodules_formula(2, 1, 2), 2);
}

TEST(Counting, EnumerationExamples) {
    const auto a = enumerate_submodules(2, 1, 1);
    ASSERT_EQ(a.size(), 1U);
    EXPECT_TRUE(same_subgroup(a[0], SubmoduleGens(1, 2, 1, {vec(2, {lp(2, {1, 1})})})));
    const auto b = enumerate_submodules(2, 1, 2);
    ASSERT_EQ(b.size(), 2U);
    std::set<Poly> diag;
    for (const auto& u : b) diag.insert(u.echelon().basis.at(0, 0).body());
    EXPECT_EQ(diag, (std::set<Poly>{Poly(2, {1, 0, 1}), Poly(2, {1, 1, 1})}));
    EXPECT_EQ(enumerate_submodules(2, 2, 1).size(), 3U);
    EXPECT_THROW(enumerate_submodules(2, 3, 8, 100), resource_error);
}

TEST(Counting, EnumerationMatchesFormulaAndQuotientOracle) {
    const std::vector<std::tuple<std::uint32_t, std::size_t, std::size_t>> cases = {
        {2, 1, 0}, {2, 1, 1}, {2, 1, 2}, {2, 1, 3}, {2, 1, 4}, {2, 2, 0}, {2, 2, 1}, {2, 2, 2}, {2, 2, 3},
        {3, 1, 0}, {3, 1, 1}, {3, 1, 2}, {3, 1, 3}, {3, 2, 0}, {3, 2, 1}, {3, 2, 2}};
    for (const auto& [p, k, a] : cases) {
        const auto subs = enumerate_submodules(p, k, a);
        const std::uint64_t oracle = count_by_quotients(p, k, a);
        EXPECT_EQ(subs.size(), oracle) << p << " " << k << " " << a;
        EXPECT_EQ(BigInt(subs.size()), count_submodules_formula(p, k, a));
        std::set<std::vector<std::vector<LaurentPoly>>> seen;
        for (const auto& u : subs) {
            EXPECT_EQ(diagonal_degree_sum(u), a);
            EXPECT_TRUE(seen.insert(u.echelon().basis.row_data()).second) << "duplicate canonical form";
        }
    }
}

TEST(Construct, Examples) {
    EXPECT_TRUE(same_subgroup(construct_prescribed(1, 2, 1, 1), SubmoduleGens::full(1, 2)));
    const SubmoduleGens even = construct_prescribed(1, 2, 2, 1);
    EXPECT_TRUE(same_subgroup(even, SubmoduleGens(1, 2, 2, {vec(2, {lp(2, {1})})})));
    const SubmoduleGens mixed = construct_prescribed(2, 2, 2, 3);
    EXPECT_EQ(r_value(mixed), (InvariantReport{2, 3, 1}));
    EXPECT_THROW(construct_prescribed(1, 2, 2, 3), std::domain_error);
    EXPECT_THROW(construct_prescribed(1, 2, 2, 0), std::domain_error);
}

TEST(Construct, RoundTripThroughInvariants) {
    for (std::uint32_t p : {2U, 3U})
        for (std::size_t n = 1; n <= 2; ++n)
            for (std::int64_t b = 1; b <= 4; ++b)
                for (std::int64_t r = 1; r <= static_cast<std::int64_t>(n) * b; ++r) {
                    const SubmoduleGens u = construct_prescribed(n, p, b, r);
                    EXPECT_EQ(exponent(u), b);
                    EXPECT_EQ(static_cast<std::int64_t>(rk_m(u, b)), r);
                }
}

TEST(Vanish, ShrinksToZero) {
    EXPECT_TRUE(vanish_sequence(SubmoduleGens::zero(1, 2), 3).back().generators().empty() ||
                rank_of(vanish_sequence(SubmoduleGens::zero(1, 2), 3).back()) == 0);
    const auto seq = vanish_sequence(SubmoduleGens::full(1, 2), 2);
    EXPECT_TRUE(same_subgroup(seq[0], SubmoduleGens(1, 2, 1, {vec(2, {lp(2, {1, 1})})})));
    EXPECT_TRUE(same_subgroup(seq[1], SubmoduleGens(1, 2, 1, {vec(2, {lp(2, {1, 1, 1})})})));
    // Every nonzero vector supported on [-2, 2] leaves the sequence once deg f_m exceeds 4.
    const auto long_seq = vanish_sequence(SubmoduleGens::full(1, 2), 13);
    for (std::uint64_t code = 1; code < 32; ++code) {
        LaurentPoly f(2);
        for (int k = 0; k < 5; ++k)
            if ((code >> k) & 1U) f = f + LaurentPoly::monomial(2, 1, k - 2);
        const LaurentVector w({f});
        EXPECT_FALSE(membership(long_seq.back(), w));
        for (const auto& u : long_seq) EXPECT_EQ(r_value(u), r_value(SubmoduleGens::full(1, 2)));
    }
}

TEST(Approach, ExamplesAndInvariants) {
    const SubmoduleGens zero = SubmoduleGens::zero(1, 2);
    const auto a = approach_sequence(zero, 2, 1, 4);
    for (const auto& u : a) {
        EXPECT_EQ(r_value(u).e, 2);
        EXPECT_EQ(r_value(u).r, 1);
    }
    const auto b = approach_sequence(zero, 1, 0, 3);
    const auto irr = enumerate_irreducibles(2, 3);
    for (std::size_t m = 0; m < b.size(); ++m)
        EXPECT_TRUE(same_subgroup(b[m], SubmoduleGens(1, 2, 1, {LaurentVector({LaurentPoly(irr[m])})})));
    EXPECT_THROW(approach_sequence(SubmoduleGens::full(1, 2), 1, 0, 2), std::domain_error);
    EXPECT_THROW(approach_sequence(zero, 2, 2, 2), std::domain_error);
}

TEST(Approach, ContainsLimitAndConverges) {
    SplitMix64 rng(27);
    for (int i = 0; i < 10; ++i) {
        const auto e = static_cast<std::int64_t>(1 + rng.uniform(2));
        const SubmoduleGens u = random_submodule(2, 2, e, 1, rng);
        const InvariantReport inv = r_value(u);
        if (inv.r == 0) continue;
        const auto b = static_cast<std::int64_t>(1 + rng.uniform(2));
        const auto target = static_cast<std::int64_t>(rng.uniform(static_cast<std::uint64_t>(inv.r * b)));
        const auto seq = approach_sequence(u, b, target, 40);
        for (const auto& um : seq) {
            EXPECT_TRUE(is_subset(u, um));
            EXPECT_FALSE(same_subgroup(u, um));
            EXPECT_EQ(r_value(um).e, inv.e * b);
            EXPECT_EQ(r_value(um).r, target);
        }
        // Vectors on [0, 1] outside U are outside the last terms.
        for (std::uint64_t code = 0; code < 16; ++code) {
            std::vector<LaurentPoly> c(2, LaurentPoly(2));
            for (int k = 0; k < 4; ++k)
                if ((code >> k) & 1U) c[static_cast<std::size_t>(k % 2)] = c[static_cast<std::size_t>(k % 2)] + LaurentPoly::monomial(2, 1, k / 2);
            const LaurentVector w(c);
            EXPECT_EQ(membership(seq.back(), w), membership(u, w));
        }
    }
}
