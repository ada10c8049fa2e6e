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

#include "lamplighter/hermite.hpp"
#include "lamplighter/laurent.hpp"
#include "lamplighter/poly.hpp"
#include "lamplighter/random.hpp"

using namespace lamplighter;

namespace {

Poly P2(std::vector<coeff_t> c) { return Poly(2, std::move(c)); }

Poly random_poly(std::uint32_t p, std::size_t max_len, SplitMix64& rng) {
    std::vector<coeff_t> c(rng.uniform(max_len + 1));
    for (auto& a : c) a = static_cast<coeff_t>(rng.uniform(p));
    return Poly(p, c);
}

// All monic polynomials of degree d, via base-p digits of the lower coefficients.
std::vector<Poly> all_monic(std::uint32_t p, std::size_t d) {
    std::vector<Poly> out;
    for (std::uint64_t code = 0; code < ipow(p, d); ++code) out.push_back(monic_from_code(p, d, code));
    return out;
}

}  // namespace

TEST(Field, ModulusChecks) {
    EXPECT_NO_THROW(check_modulus(2));
    EXPECT_NO_THROW(check_modulus(65521));
    EXPECT_THROW(check_modulus(4), std::invalid_argument);
    EXPECT_THROW(check_modulus(1), std::invalid_argument);
    EXPECT_THROW(check_same_modulus(2, 3), std::invalid_argument);
}

TEST(Field, Inverses) {
    for (std::uint32_t p : {2U, 3U, 5U, 7U, 101U})
        for (coeff_t a = 1; a < p; ++a) EXPECT_EQ(mod_mul(a, mod_inv(a, p), p), 1U);
}

TEST(Poly, ZeroHasNoDegree) {
    EXPECT_FALSE(Poly(2).degree().has_value());
    EXPECT_EQ(Poly(3, {1, 0, 0}).degree(), std::optional<std::size_t>(0));
}

TEST(Poly, GcdExamples) {
    const Poly f = P2({1, 0, 1});  // x^2 + 1
    EXPECT_EQ(poly_gcd(f, Poly(2)), f.monic());
    EXPECT_EQ(poly_gcd(f, P2({1, 1})), P2({1, 1}));
    EXPECT_EQ(poly_gcd(Poly::x(2), P2({1, 1})), Poly::one(2));
    EXPECT_TRUE(poly_gcd(Poly(2), Poly(2)).is_zero());
    EXPECT_THROW(poly_gcd(Poly::one(2), Poly::one(3)), std::invalid_argument);
}

TEST(Poly, GcdIsGreatestCommonDivisor) {
    SplitMix64 rng(11);
    for (int i = 0; i < 300; ++i) {
        const std::uint32_t p = i % 2 ? 3 : 2;
        const Poly c = random_poly(p, 3, rng);
        const Poly a = random_poly(p, 4, rng) * c, b = random_poly(p, 4, rng) * c;
        const Poly g = poly_gcd(a, b);
        if (g.is_zero()) {
            EXPECT_TRUE(a.is_zero() && b.is_zero());
            continue;
        }
        EXPECT_EQ(g.leading(), 1U);
        EXPECT_TRUE(divides(g, a));
        EXPECT_TRUE(divides(g, b));
        if (!c.is_zero()) {
            EXPECT_TRUE(divides(c, g));
        }
    }
}

TEST(Poly, DivisionIdentity) {
    SplitMix64 rng(12);
    for (int i = 0; i < 300; ++i) {
        const std::uint32_t p = i % 2 ? 5 : 2;
        const Poly a = random_poly(p, 7, rng), b = random_poly(p, 4, rng);
        if (b.is_zero()) continue;
        const auto [q, r] = divmod(a, b);
        EXPECT_EQ(q * b + r, a);
        if (!r.is_zero()) {
            EXPECT_LT(*r.degree(), *b.degree());
        }
    }
}

TEST(Poly, PhiExamples) {
    EXPECT_EQ(phi(2, 1, 5), Poly::one(2));
    EXPECT_EQ(phi(2, 3, 1), P2({1, 1, 1}));
    EXPECT_EQ(phi(2, 2, 2), P2({1, 0, 1}));
    EXPECT_THROW(phi(2, 0, 1), std::domain_error);
    EXPECT_THROW(phi(2, 1, 0), std::domain_error);
}

TEST(Poly, PhiGeometricSeriesIdentity) {
    for (std::uint32_t p : {2U, 3U})
        for (std::int64_t t = 1; t <= 16; ++t)
            for (std::int64_t s = 1; s <= 16; ++s) {
                const Poly lhs = (Poly::monomial(p, 1, static_cast<std::size_t>(s)) - Poly::one(p)) * phi(p, t, s);
                const Poly rhs = Poly::monomial(p, 1, static_cast<std::size_t>(s * t)) - Poly::one(p);
                EXPECT_EQ(lhs, rhs) << "t=" << t << " s=" << s;
            }
}

TEST(Poly, IrreducibleExamples) {
    const auto two = enumerate_irreducibles(2, 4);
    ASSERT_EQ(two.size(), 4U);
    EXPECT_EQ(two[0], P2({1, 1}));
    EXPECT_EQ(two[1], P2({1, 1, 1}));
    EXPECT_EQ(two[2], P2({1, 1, 0, 1}));
    EXPECT_EQ(two[3], P2({1, 0, 1, 1}));
    const auto three = enumerate_irreducibles(3, 2);
    EXPECT_EQ(three[0], Poly(3, {1, 1}));
    EXPECT_EQ(three[1], Poly(3, {2, 1}));
    EXPECT_EQ(enumerate_irreducibles(2, 1).front(), P2({1, 1}));
}

// Oracle: a monic polynomial is reducible iff it is a product of two monic polynomials of positive degree.
TEST(Poly, IrreduciblesMatchProductSieve) {
    for (std::uint32_t p : {2U, 3U}) {
        const std::size_t max_deg = p == 2 ? 8 : 5;
        std::set<Poly> reducible;
        for (std::size_t d1 = 1; d1 < max_deg; ++d1)
            for (std::size_t d2 = d1; d1 + d2 <= max_deg; ++d2)
                for (const auto& a : all_monic(p, d1))
                    for (const auto& b : all_monic(p, d2)) reducible.insert(a * b);
        std::vector<Poly> expected;
        for (std::size_t d = 1; d <= max_deg; ++d)
            for (const auto& f : all_monic(p, d))
                if (!reducible.count(f) && f != Poly::x(p)) expected.push_back(f);
        const auto got = enumerate_irreducibles(p, expected.size());
        EXPECT_EQ(got, expected) << "p=" << p;
        for (const auto& f : got) EXPECT_NE(f, Poly::x(p));
    }
}

TEST(Laurent, CanonicalNormalization) {
    const LaurentPoly f(P2({0, 0, 1, 1}), -5);  // x^-5 (x^2 + x^3)
    EXPECT_EQ(f.offset(), -3);
    EXPECT_EQ(f.body(), P2({1, 1}));
    EXPECT_EQ(LaurentPoly(Poly(2), 7).offset(), 0);
    EXPECT_EQ(f.shifted(4).offset(), 1);
    EXPECT_EQ(f.shifted(4).body(), f.body());
}

TEST(Laurent, RingLaws) {
    SplitMix64 rng(13);
    for (int i = 0; i < 200; ++i) {
        const LaurentPoly a(random_poly(3, 4, rng), static_cast<std::int64_t>(rng.uniform(7)) - 3);
        const LaurentPoly b(random_poly(3, 4, rng), static_cast<std::int64_t>(rng.uniform(7)) - 3);
        const LaurentPoly c(random_poly(3, 4, rng), static_cast<std::int64_t>(rng.uniform(7)) - 3);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a - a, LaurentPoly(3));
    }
}

TEST(Laurent, ResidueOfInverseX) {
    const Poly d = P2({1, 1, 1});
    const Poly inv = inverse_of_x_mod(d);
    EXPECT_EQ((Poly::x(2) * inv) % d, Poly::one(2));
    EXPECT_THROW(inverse_of_x_mod(Poly::x(2)), std::domain_error);
}

TEST(Hermite, Examples) {
    EXPECT_EQ(hermite_normal_form(PolyMatrix::identity(2, 3)).basis, PolyMatrix::identity(2, 3));
    EXPECT_EQ(hermite_normal_form(PolyMatrix::identity(2, 3)).rank(), 3U);
    PolyMatrix m(2, 1);
    m.append_row({Poly::x(2)});
    m.append_row({P2({1, 1})});
    const auto h = hermite_normal_form(m);
    EXPECT_EQ(h.rank(), 1U);
    EXPECT_EQ(h.basis.at(0, 0), Poly::one(2));
    PolyMatrix z(2, 2);
    z.append_row({Poly(2), Poly(2)});
    EXPECT_EQ(hermite_normal_form(z).rank(), 0U);
}

TEST(Hermite, IdempotentAndRowSpacePreserved) {
    SplitMix64 rng(14);
    for (int i = 0; i < 150; ++i) {
        const std::uint32_t p = i % 2 ? 3 : 2;
        const std::size_t cols = 1 + rng.uniform(3), rows = 1 + rng.uniform(4);
        PolyMatrix m(p, cols);
        for (std::size_t r = 0; r < rows; ++r) {
            std::vector<Poly> row;
            for (std::size_t c = 0; c < cols; ++c) row.push_back(random_poly(p, 3, rng));
            m.append_row(row);
        }
        const auto h = hermite_normal_form(m);
        EXPECT_EQ(hermite_normal_form(h.basis), h);
        for (const auto& row : m.row_data()) EXPECT_TRUE(in_row_space(h, row));
        for (const auto& row : h.basis.row_data()) {
            PolyMatrix again(p, cols, m.row_data());
            EXPECT_TRUE(in_row_space(hermite_normal_form(again), row));
        }
        for (std::size_t k = 0; k < h.rank(); ++k) EXPECT_EQ(h.basis.at(k, h.pivots[k]).leading(), 1U);
    }
}

TEST(Hermite, LaurentPivotsHaveNonzeroConstantTerm) {
    SplitMix64 rng(15);
    for (int i = 0; i < 100; ++i) {
        LaurentMatrix m(2, 2);
        for (int r = 0; r < 3; ++r)
            m.append_row({LaurentPoly(random_poly(2, 3, rng), static_cast<std::int64_t>(rng.uniform(5)) - 2),
                          LaurentPoly(random_poly(2, 3, rng), static_cast<std::int64_t>(rng.uniform(5)) - 2)});
        const auto h = hermite_normal_form(m);
        for (std::size_t k = 0; k < h.rank(); ++k) {
            const LaurentPoly& d = h.basis.at(k, h.pivots[k]);
            EXPECT_EQ(d.offset(), 0);
            EXPECT_EQ(d.body().leading(), 1U);
            EXPECT_NE(d.body().coeff(0), 0U);
        }
        EXPECT_EQ(hermite_normal_form(h.basis), h);
    }
}
