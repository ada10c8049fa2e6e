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

#include "lamplighter/group.hpp"
#include "lamplighter/instances.hpp"

using namespace lamplighter;

namespace {

LaurentVector lamps(std::uint32_t p, std::initializer_list<std::int64_t> positions) {
    LaurentVector v(1, p);
    for (auto pos : positions) v = v + LaurentVector::lamp(1, p, 0, pos);
    return v;
}

SubgroupTriple random_valid_triple(SplitMix64& rng) {
    const std::size_t n = 1 + rng.uniform(2);
    const std::uint32_t p = rng.uniform(2) ? 3 : 2;
    const auto s = static_cast<std::int64_t>(1 + rng.uniform(4));
    const auto ds = divisors(s);
    return random_triple(n, p, s, ds[rng.uniform(ds.size())], rng);
}

// Elements of the subgroup generated by (v, s) and the x^{ke} g (|k| <= 2), by words of length <= len.
std::set<GroupElement> generated(const SubgroupTriple& V, std::size_t len) {
    std::vector<GroupElement> gens{{V.v, V.s}, inverse({V.v, V.s})};
    for (const auto& g : V.u.generators())
        for (std::int64_t k = -2; k <= 2; ++k) {
            gens.push_back({g.shifted(k * V.u.period()), 0});
            gens.push_back(inverse(gens.back()));
        }
    std::set<GroupElement> seen{GroupElement::identity(V.n(), V.p())};
    std::vector<GroupElement> frontier(seen.begin(), seen.end());
    for (std::size_t l = 0; l < len; ++l) {
        std::vector<GroupElement> next;
        for (const auto& x : frontier)
            for (const auto& g : gens)
                if (auto y = multiply(x, g); seen.insert(y).second) next.push_back(y);
        frontier = std::move(next);
    }
    return seen;
}

}  // namespace

TEST(GroupLaw, Examples) {
    const GroupElement g{lamps(2, {0}), 1};
    EXPECT_EQ(multiply(g, GroupElement::identity(1, 2)), g);
    EXPECT_EQ(multiply(g, inverse(g)), GroupElement::identity(1, 2));
    // x delta_0 = delta_{-1}: (delta_0, 1)(delta_0, 0) = (delta_0 + delta_{-1}, 1).
    EXPECT_EQ(multiply(g, GroupElement{lamps(2, {0}), 0}), (GroupElement{lamps(2, {0, -1}), 1}));
}

TEST(GroupLaw, AxiomsOnRandomElements) {
    SplitMix64 rng(31);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = 1 + rng.uniform(2);
        const std::uint32_t p = rng.uniform(2) ? 3 : 2;
        const GroupElement a = random_element(n, p, 3, 4, rng), b = random_element(n, p, 3, 4, rng),
                           c = random_element(n, p, 3, 4, rng);
        EXPECT_EQ(multiply(multiply(a, b), c), multiply(a, multiply(b, c)));
        EXPECT_EQ(multiply(a, inverse(a)), GroupElement::identity(n, p));
        EXPECT_EQ(multiply(inverse(a), a), GroupElement::identity(n, p));
    }
}

TEST(GroupLaw, PowerMatchesIteratedProduct) {
    SplitMix64 rng(32);
    for (int i = 0; i < 50; ++i) {
        const GroupElement g = random_element(2, 3, 2, 3, rng);
        EXPECT_EQ(power(g, 0), GroupElement::identity(2, 3));
        EXPECT_EQ(power(g, -1), inverse(g));
        GroupElement up = GroupElement::identity(2, 3), down = up;
        for (std::int64_t k = 1; k <= 6; ++k) {
            up = multiply(up, g);
            down = multiply(down, inverse(g));
            EXPECT_EQ(power(g, k), up);
            EXPECT_EQ(power(g, -k), down);
        }
    }
}

TEST(Triple, Validation) {
    const SubmoduleGens even(1, 2, 2, {lamps(2, {0})});
    EXPECT_THROW(make_triple(3, even, LaurentVector(1, 2)), precondition_error);
    EXPECT_THROW(make_triple(0, even, lamps(2, {1})), std::domain_error);
    EXPECT_THROW(make_triple(-1, even, LaurentVector(1, 2)), std::domain_error);
    EXPECT_NO_THROW(make_triple(4, even, lamps(2, {1})));
}

TEST(Triple, MembershipExamples) {
    const SubmoduleGens even(1, 2, 2, {lamps(2, {0})});
    const SubgroupTriple V = make_triple(2, even, lamps(2, {1}));
    EXPECT_TRUE(triple_membership(V, {V.v, V.s}));
    EXPECT_TRUE(triple_membership(V, {lamps(2, {0}), 0}));
    EXPECT_TRUE(triple_membership(V, power({V.v, V.s}, -2)));
    EXPECT_FALSE(triple_membership(V, {lamps(2, {1}), 0}));
    EXPECT_FALSE(triple_membership(V, {LaurentVector(1, 2), 1}));
}

TEST(Triple, GeneratedElementsAreMembers) {
    SplitMix64 rng(33);
    for (int i = 0; i < 40; ++i) {
        const SubgroupTriple V = random_valid_triple(rng);
        for (const auto& g : generated(V, 3)) EXPECT_TRUE(triple_membership(V, g));
    }
}

// For U = f R (n = 1), membership of (w, t) is: s | t and f divides the A-part of (w, t)(v, s)^{-t/s}.
TEST(Triple, MembershipAgainstDivisibility) {
    SplitMix64 rng(34);
    for (int i = 0; i < 300; ++i) {
        const LaurentVector f = random_vector(1, 3, 0, 2, rng);
        if (f[0].is_zero()) continue;
        const auto s = static_cast<std::int64_t>(1 + rng.uniform(3));
        const SubgroupTriple V = make_triple(s, SubmoduleGens(1, 3, 1, {f}), random_vector(1, 3, -1, 1, rng));
        const GroupElement g = random_element(1, 3, 2, 6, rng);
        bool oracle = false;
        if (g.s % s == 0) {
            const LaurentVector a = multiply(g, power({V.v, s}, -(g.s / s))).v;
            oracle = a[0].is_zero() || divides(f[0].body(), a[0].body());
        }
        EXPECT_EQ(triple_membership(V, g), oracle);
    }
}

TEST(Triple, CanonicalForm) {
    SplitMix64 rng(35);
    for (int i = 0; i < 100; ++i) {
        const SubgroupTriple V = random_valid_triple(rng);
        const SubgroupTriple c = canonical_triple(V);
        EXPECT_TRUE(identical(canonical_triple(c), c));
        EXPECT_TRUE(same_subgroup(c, V));
        // Shifting v by an element of U and reordering generators changes nothing.
        LaurentVector u(V.n(), V.p());
        for (const auto& g : V.u.generators()) u = u + g.shifted(V.u.period());
        auto gens = V.u.generators();
        std::reverse(gens.begin(), gens.end());
        const SubgroupTriple W = make_triple(V.s, SubmoduleGens(V.n(), V.p(), V.u.period(), gens), V.v + u);
        EXPECT_TRUE(identical(canonical_triple(W), c));
    }
}

TEST(Contains, Examples) {
    SplitMix64 rng(36);
    const SubmoduleGens big(1, 2, 1, {LaurentVector({LaurentPoly(Poly(2, {1, 1}))})});          // (1 + x) R
    const SubmoduleGens small(1, 2, 1, {LaurentVector({LaurentPoly(Poly(2, {1, 0, 1}))})});     // (1 + x)^2 R
    const LaurentVector vp = lamps(2, {2});
    const SubgroupTriple V = make_triple(1, big, vp);
    const SubgroupTriple W = make_triple(2, small, LaurentPoly(Poly(2, {1, 1})) * vp);
    EXPECT_TRUE(contains(V, V));
    EXPECT_TRUE(contains(V, W));
    EXPECT_FALSE(contains(W, V));
    for (const auto& g : word_ball(1, 2, 4))
        if (triple_membership(W, g)) { EXPECT_TRUE(triple_membership(V, g)); }
    const SubgroupTriple three = make_triple(3, SubmoduleGens::zero(1, 2), LaurentVector(1, 2));
    const SubgroupTriple two = make_triple(2, SubmoduleGens::zero(1, 2), LaurentVector(1, 2));
    EXPECT_FALSE(contains(three, two));
}

TEST(Contains, PartialOrderOnChains) {
    SplitMix64 rng(37);
    for (int i = 0; i < 60; ++i) {
        const SubgroupTriple V = random_valid_triple(rng);
        // W = (k s, U', phi_k(x^s) v + u) is a subgroup of V for U' in U and u in U.
        const auto k = static_cast<std::int64_t>(1 + rng.uniform(3));
        // Multiplying by 1 + x^e stays inside U, which is a module over F_p[x^e].
        const bool grow = rng.uniform(2) == 1;
        std::vector<LaurentVector> fg;
        for (const auto& g : V.u.generators()) fg.push_back(grow ? g + g.shifted(-V.u.period()) : g);
        const SubmoduleGens fu(V.n(), V.p(), V.u.period(), fg);
        LaurentVector u(V.n(), V.p());
        for (const auto& g : V.u.generators()) u = u + g;
        const SubgroupTriple W = make_triple(k * V.s, fu, LaurentPoly(phi(V.p(), k, V.s)) * V.v + u);
        EXPECT_TRUE(contains(V, W));
        EXPECT_TRUE(contains(W, W));
        if (contains(W, V)) { EXPECT_TRUE(same_subgroup(V, W)); }
        for (const auto& g : word_ball(V.n(), V.p(), 2))
            if (triple_membership(W, g)) { EXPECT_TRUE(triple_membership(V, g)); }
        // Transitivity through a third level.
        const SubgroupTriple X = make_triple(2 * W.s, W.u, LaurentPoly(phi(W.p(), 2, W.s)) * W.v);
        EXPECT_TRUE(contains(W, X));
        EXPECT_TRUE(contains(V, X));
        // Smaller subgroups have a larger product t r.
        const QPoint qv = phi_encoding(V), qw = phi_encoding(W);
        EXPECT_LE(qv.t * qv.r, qw.t * qw.r);
    }
}

TEST(Conjugation, ClosedFormMatchesElementwise) {
    SplitMix64 rng(38);
    for (int i = 0; i < 60; ++i) {
        const SubgroupTriple V = random_valid_triple(rng);
        const GroupElement g = random_element(V.n(), V.p(), 2, 3, rng);
        const SubgroupTriple W = conjugate(g, V);
        EXPECT_EQ(pi1(W), pi1(V));
        EXPECT_EQ(phi_encoding(W), phi_encoding(V));
        for (const auto& h : word_ball(V.n(), V.p(), 3))
            EXPECT_EQ(triple_membership(W, multiply(multiply(g, h), inverse(g))), triple_membership(V, h));
    }
    const SubgroupTriple V = make_triple(2, SubmoduleGens(1, 2, 2, {lamps(2, {0})}), lamps(2, {1}));
    EXPECT_TRUE(identical(conjugate(GroupElement::identity(1, 2), V), canonical_triple(V)));
    const SubgroupTriple W = conjugate({LaurentVector(1, 2), 3}, V);
    EXPECT_TRUE(same_subgroup(W, make_triple(2, shift(V.u, 3), V.v.shifted(3))));
}

TEST(Projections, Examples) {
    const SubgroupTriple A = make_triple(0, SubmoduleGens::full(1, 2), LaurentVector(1, 2));
    EXPECT_EQ(pi1(A), 0);
    EXPECT_THROW(phi_encoding(A), std::domain_error);
    const SubgroupTriple V = make_triple(2, SubmoduleGens(1, 2, 2, {lamps(2, {0})}), lamps(2, {1}));
    EXPECT_TRUE(same_subgroup(pi2(V), SubmoduleGens(1, 2, 2, {lamps(2, {0})})));
    EXPECT_EQ(phi_encoding(V), (QPoint{1, 1}));
    EXPECT_EQ(phi_encoding(make_triple(3, SubmoduleGens::full(2, 3), LaurentVector(2, 3))), (QPoint{3, 0}));
}

TEST(Cylinder, Examples) {
    const SubgroupTriple V = make_triple(2, SubmoduleGens(1, 2, 2, {lamps(2, {0})}), lamps(2, {1}));
    const GroupElement e = GroupElement::identity(1, 2), g{V.v, V.s};
    EXPECT_TRUE(cylinder_test(V, {e}, {}));
    EXPECT_TRUE(cylinder_test(V, {g}, {}));
    EXPECT_FALSE(cylinder_test(V, {}, {g}));
    EXPECT_TRUE(cylinder_test(V, {g}, {{lamps(2, {1}), 0}}));
}

TEST(Ball, MembershipVectorMatchesElementwise) {
    SplitMix64 rng(39);
    for (int i = 0; i < 20; ++i) {
        const SubgroupTriple V = random_valid_triple(rng);
        const BallSpec ball{V.p() == 2 ? 2 : 1, 2 * V.s};
        const auto bits = ball_membership(V, ball);
        ASSERT_EQ(bits.size(), ball_size(V.n(), V.p(), ball));
        for (std::uint64_t k = 0; k < bits.size(); ++k) {
            const GroupElement g = ball_element(V.n(), V.p(), ball, k);
            EXPECT_EQ(bits[k], triple_membership(V, g));
        }
    }
}

TEST(Ball, ConvergenceReports) {
    const SubgroupTriple V = make_triple(2, SubmoduleGens(1, 2, 2, {lamps(2, {0})}), lamps(2, {1}));
    const auto constant = converges_on_ball([&](std::int64_t) { return V; }, V, {3, 4}, 10);
    EXPECT_TRUE(constant.converged);
    EXPECT_EQ(constant.stabilization_index, 1);
    // A sequence that always contains the extra lamp delta_1 never converges.
    const SubgroupTriple other = make_triple(2, SubmoduleGens::full(1, 2), LaurentVector(1, 2));
    const auto planted = converges_on_ball([&](std::int64_t) { return other; }, V, {3, 4}, 10);
    EXPECT_FALSE(planted.converged);
    ASSERT_TRUE(planted.witness.has_value());
    EXPECT_NE(triple_membership(other, *planted.witness), triple_membership(V, *planted.witness));
    // Differing only at the first terms gives the next index.
    const auto late = converges_on_ball([&](std::int64_t m) { return m <= 3 ? other : V; }, V, {3, 4}, 10);
    EXPECT_TRUE(late.converged);
    EXPECT_EQ(late.stabilization_index, 4);
    EXPECT_THROW(converges_on_ball([&](std::int64_t) { return V; }, V, {3, 4}, 0), std::domain_error);
}

TEST(Ball, WordBallSizes) {
    // n = 1, p = 2: generators a (an involution), tau, tau^-1.
    EXPECT_EQ(word_ball(1, 2, 0).size(), 1U);
    EXPECT_EQ(word_ball(1, 2, 1).size(), 4U);
    EXPECT_EQ(standard_generators(2, 3).size(), 6U);
}
