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
 * @file hermite.hpp
 * @brief Hermite normal form over the Euclidean rings F_p[x] and F_p[x, x^-1].
 *
 * The algorithm is generic over a traits class describing the ring: a
 * Euclidean norm with division, a unit that normalizes an element, and a
 * canonical residue system modulo a normalized element.  With those, the row
 * echelon form whose pivots are normalized and whose entries above each pivot
 * are canonical residues is unique for a given row space.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "laurent.hpp"

namespace lamplighter {

template <class T>
class Matrix {
   public:
    Matrix(std::uint32_t p, std::size_t cols) : p_(p), cols_(cols) {}
    Matrix(std::uint32_t p, std::size_t cols, std::vector<std::vector<T>> rows) : p_(p), cols_(cols), rows_(std::move(rows)) {
        for (const auto& r : rows_)
            if (r.size() != cols_) throw std::invalid_argument("ragged matrix row");
    }

    static Matrix identity(std::uint32_t p, std::size_t n) {
        Matrix m(p, n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<T> r(n, T(p));
            r[i] = T(Poly::one(p));
            m.rows_.push_back(std::move(r));
        }
        return m;
    }

    std::uint32_t modulus() const noexcept { return p_; }
    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }
    const T& at(std::size_t i, std::size_t j) const { return rows_.at(i).at(j); }
    const std::vector<T>& row(std::size_t i) const { return rows_.at(i); }
    const std::vector<std::vector<T>>& row_data() const noexcept { return rows_; }
    void append_row(std::vector<T> r) {
        if (r.size() != cols_) throw std::invalid_argument("row length does not match matrix width");
        rows_.push_back(std::move(r));
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

   private:
    std::uint32_t p_;
    std::size_t cols_;
    std::vector<std::vector<T>> rows_;
};

using PolyMatrix = Matrix<Poly>;
using LaurentMatrix = Matrix<LaurentPoly>;

template <class T>
struct euclidean_traits;

template <>
struct euclidean_traits<Poly> {
    static std::size_t norm(const Poly& a) { return *a.degree(); }
    static std::pair<Poly, Poly> divide(const Poly& a, const Poly& b) { return divmod(a, b); }
    static Poly normalizer(const Poly& a) { return Poly::constant(a.modulus(), mod_inv(a.leading(), a.modulus())); }
    /// q such that a - q*d has degree < deg d.
    static Poly residue_quotient(const Poly& a, const Poly& d) { return divmod(a, d).first; }
};

template <>
struct euclidean_traits<LaurentPoly> {
    static std::size_t norm(const LaurentPoly& a) { return a.span(); }
    static std::pair<LaurentPoly, LaurentPoly> divide(const LaurentPoly& a, const LaurentPoly& b) {
        auto [q, r] = divmod(a.body(), b.body());
        return {LaurentPoly(q, a.offset() - b.offset()), LaurentPoly(r, a.offset())};
    }
    /// c * x^k making the element a monic polynomial with nonzero constant term.
    static LaurentPoly normalizer(const LaurentPoly& a) {
        return LaurentPoly::monomial(a.modulus(), mod_inv(a.body().leading(), a.modulus()), -a.offset());
    }
    /// q such that a - q*d is the polynomial of degree < deg d congruent to a modulo d.
    static LaurentPoly residue_quotient(const LaurentPoly& a, const LaurentPoly& d) {
        const Poly& dp = d.body();
        const LaurentPoly diff = a - LaurentPoly(laurent_residue(a, dp));
        if (diff.is_zero()) return LaurentPoly(a.modulus());
        auto [q, r] = divmod(diff.body(), dp);
        if (!r.is_zero()) throw consistency_error("residue computation left a nonzero remainder");
        return LaurentPoly(q, diff.offset());
    }
};

template <class T>
std::vector<T> row_axpy(std::vector<T> y, const T& a, const std::vector<T>& x) {
    for (std::size_t k = 0; k < y.size(); ++k)
        if (!x[k].is_zero()) y[k] -= a * x[k];
    return y;
}

template <class T>
bool is_zero_row(const std::vector<T>& r) {
    return std::all_of(r.begin(), r.end(), [](const T& a) { return a.is_zero(); });
}

/// Row echelon basis with its pivot columns; rank = number of rows.
template <class T>
struct HermiteForm {
    Matrix<T> basis;
    std::vector<std::size_t> pivots;
    std::size_t rank() const noexcept { return pivots.size(); }
    friend bool operator==(const HermiteForm&, const HermiteForm&) = default;
};

template <class T>
HermiteForm<T> hermite_normal_form(const Matrix<T>& m) {
    using traits = euclidean_traits<T>;
    const std::uint32_t p = m.modulus();
    std::vector<std::vector<T>> rows;
    for (const auto& r : m.row_data()) {
        for (const auto& a : r) check_same_modulus(a.modulus(), p);
        if (!is_zero_row(r)) rows.push_back(r);
    }
    std::vector<std::size_t> pivots;
    std::size_t top = 0;
    for (std::size_t col = 0; col < m.cols() && top < rows.size(); ++col) {
        // Euclid on the column until a single nonzero entry remains at or below `top`.
        for (;;) {
            std::optional<std::size_t> best;
            for (std::size_t i = top; i < rows.size(); ++i)
                if (!rows[i][col].is_zero() && (!best || traits::norm(rows[i][col]) < traits::norm(rows[*best][col])))
                    best = i;
            if (!best) break;
            std::swap(rows[top], rows[*best]);
            bool others = false;
            for (std::size_t i = top + 1; i < rows.size(); ++i) {
                if (rows[i][col].is_zero()) continue;
                const T q = traits::divide(rows[i][col], rows[top][col]).first;
                rows[i] = row_axpy(std::move(rows[i]), q, rows[top]);
                others = others || !rows[i][col].is_zero();
            }
            if (!others) break;
        }
        if (top >= rows.size() || rows[top][col].is_zero()) continue;
        const T u = traits::normalizer(rows[top][col]);
        for (auto& a : rows[top])
            if (!a.is_zero()) a = u * a;
        for (std::size_t i = 0; i < top; ++i) {
            if (rows[i][col].is_zero()) continue;
            const T q = traits::residue_quotient(rows[i][col], rows[top][col]);
            if (!q.is_zero()) rows[i] = row_axpy(std::move(rows[i]), q, rows[top]);
        }
        pivots.push_back(col);
        ++top;
    }
    rows.resize(top);
    return HermiteForm<T>{Matrix<T>(p, m.cols(), std::move(rows)), std::move(pivots)};
}

/**
 * Canonical representative of v modulo the row space of h: every pivot entry
 * is replaced by its canonical residue.  The map is F_p-linear and vanishes
 * exactly on the row space.
 */
template <class T>
std::vector<T> reduce_against(const HermiteForm<T>& h, std::vector<T> v) {
    using traits = euclidean_traits<T>;
    for (std::size_t k = 0; k < h.pivots.size(); ++k) {
        const std::size_t c = h.pivots[k];
        if (v[c].is_zero()) continue;
        const T q = traits::residue_quotient(v[c], h.basis.at(k, c));
        if (!q.is_zero()) v = row_axpy(std::move(v), q, h.basis.row(k));
    }
    return v;
}

template <class T>
bool in_row_space(const HermiteForm<T>& h, const std::vector<T>& v) {
    return is_zero_row(reduce_against(h, v));
}

}  // namespace lamplighter
