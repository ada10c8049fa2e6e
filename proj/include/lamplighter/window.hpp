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
 * @file window.hpp
 * @brief Subgroups of a finite window X^{[lo,hi]} of the lamp group, as
 * F_p-subspaces in reduced echelon form.
 *
 * A vector of the window has n (hi - lo + 1) coordinates; the lamp of
 * coordinate c at position pos has index (pos - lo) n + c.
 */

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "group.hpp"
#include "module.hpp"

namespace lamplighter {

using FpRow = std::vector<coeff_t>;

/// Reduced row echelon form over F_p: pivots are leading entries equal to 1, rows ordered by pivot.
inline std::vector<FpRow> rref(std::vector<FpRow> rows, std::uint32_t p) {
    if (rows.empty()) return rows;
    const std::size_t d = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < d && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        const coeff_t inv = mod_inv(rows[rank][col], p);
        for (auto& c : rows[rank]) c = mod_mul(c, inv, p);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            const coeff_t f = rows[r][col];
            for (std::size_t k = col; k < d; ++k) rows[r][k] = mod_sub(rows[r][k], mod_mul(f, rows[rank][k], p), p);
        }
        ++rank;
    }
    rows.resize(rank);
    return rows;
}

/// Basis (in reduced echelon form) of {c : sum_i c_i images[i] = 0}.
inline std::vector<FpRow> kernel_of(const std::vector<FpRow>& images, std::uint32_t p) {
    const std::size_t k = images.size();
    const std::size_t w = images.empty() ? 0 : images.front().size();
    // Row-reduce [images | identity]; rows whose image part vanishes give the kernel.
    std::vector<FpRow> aug;
    for (std::size_t i = 0; i < k; ++i) {
        FpRow row(w + k, 0);
        std::copy(images[i].begin(), images[i].end(), row.begin());
        row[w + i] = 1;
        aug.push_back(std::move(row));
    }
    std::vector<FpRow> kernel;
    for (auto& row : rref(std::move(aug), p)) {
        if (std::any_of(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(w), [](coeff_t c) { return c != 0; })) continue;
        kernel.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(w), row.end());
    }
    return rref(std::move(kernel), p);
}

struct Window {
    std::int64_t lo = 0;
    std::int64_t hi = 0;

    std::size_t cells() const noexcept { return static_cast<std::size_t>(hi - lo + 1); }
    bool contains(const Window& w) const noexcept { return lo <= w.lo && w.hi <= hi; }
    friend bool operator==(const Window&, const Window&) = default;
    friend auto operator<=>(const Window&, const Window&) = default;
};

inline Window make_window(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::domain_error("empty window [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
    return {lo, hi};
}

/// A subgroup of X^{[lo,hi]} with its reduced echelon basis.
class WindowSubgroup {
   public:
    WindowSubgroup(std::size_t n, std::uint32_t p, Window w, std::vector<FpRow> rows = {})
        : n_(n), p_(p), window_(w) {
        check_modulus(p);
        if (n == 0) throw std::domain_error("ambient rank must be positive");
        for (const auto& r : rows)
            if (r.size() != dimension_of_space()) throw std::invalid_argument("basis row has the wrong length");
        basis_ = rref(std::move(rows), p);
    }

    static WindowSubgroup full(std::size_t n, std::uint32_t p, Window w) {
        const std::size_t d = n * w.cells();
        std::vector<FpRow> rows(d, FpRow(d, 0));
        for (std::size_t i = 0; i < d; ++i) rows[i][i] = 1;
        return WindowSubgroup(n, p, w, std::move(rows));
    }
    static WindowSubgroup trivial(std::size_t n, std::uint32_t p, Window w) { return WindowSubgroup(n, p, w); }

    std::size_t n() const noexcept { return n_; }
    std::uint32_t p() const noexcept { return p_; }
    const Window& window() const noexcept { return window_; }
    std::size_t dimension_of_space() const noexcept { return n_ * window_.cells(); }
    std::size_t dimension() const noexcept { return basis_.size(); }
    const std::vector<FpRow>& basis() const noexcept { return basis_; }

    std::size_t index(std::int64_t position, std::size_t c) const noexcept {
        return static_cast<std::size_t>(position - window_.lo) * n_ + c;
    }

    bool contains(const FpRow& v) const {
        FpRow r = v;
        for (const auto& b : basis_) {
            const std::size_t piv = static_cast<std::size_t>(std::find_if(b.begin(), b.end(), [](coeff_t c) { return c != 0; }) - b.begin());
            const coeff_t f = r[piv];
            if (f == 0) continue;
            for (std::size_t k = piv; k < r.size(); ++k) r[k] = mod_sub(r[k], mod_mul(f, b[k], p_), p_);
        }
        return std::all_of(r.begin(), r.end(), [](coeff_t c) { return c == 0; });
    }

    friend bool operator==(const WindowSubgroup&, const WindowSubgroup&) = default;
    friend auto operator<=>(const WindowSubgroup&, const WindowSubgroup&) = default;

   private:
    std::size_t n_;
    std::uint32_t p_;
    Window window_;
    std::vector<FpRow> basis_;
};

/// H cap X^{sub}, as a subgroup of the subwindow.
inline WindowSubgroup intersect_window(const WindowSubgroup& h, Window sub) {
    if (!h.window().contains(sub)) throw std::domain_error("subwindow is not nested in the window");
    const std::size_t n = h.n();
    const std::size_t first = h.index(sub.lo, 0);
    const std::size_t last = h.index(sub.hi, n - 1) + 1;
    // Coefficient vectors c with sum c_i b_i vanishing outside the subwindow.
    std::vector<FpRow> outside;
    for (const auto& b : h.basis()) {
        FpRow o;
        for (std::size_t k = 0; k < b.size(); ++k)
            if (k < first || k >= last) o.push_back(b[k]);
        outside.push_back(std::move(o));
    }
    std::vector<FpRow> rows;
    for (const auto& c : kernel_of(outside, h.p())) {
        FpRow v(last - first, 0);
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t k = first; k < last; ++k) v[k - first] = mod_add(v[k - first], mod_mul(c[i], h.basis()[i][k], h.p()), h.p());
        rows.push_back(std::move(v));
    }
    return WindowSubgroup(n, h.p(), sub, std::move(rows));
}

/// The same basis on the window shifted by k positions.
inline WindowSubgroup transport(const WindowSubgroup& h, std::int64_t k) {
    return WindowSubgroup(h.n(), h.p(), {h.window().lo + k, h.window().hi + k}, h.basis());
}

/// Direct sum of subgroups on consecutive windows, as a subgroup of their union.
inline WindowSubgroup direct_sum(const std::vector<WindowSubgroup>& pieces) {
    if (pieces.empty()) throw std::domain_error("direct sum of no pieces");
    const std::size_t n = pieces.front().n();
    const std::uint32_t p = pieces.front().p();
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        if (pieces[i].window().lo != pieces[i - 1].window().hi + 1) throw std::domain_error("pieces are not consecutive");
        if (pieces[i].n() != n || pieces[i].p() != p) throw std::invalid_argument("pieces live in different ambients");
    }
    const Window w{pieces.front().window().lo, pieces.back().window().hi};
    const std::size_t d = n * w.cells();
    std::vector<FpRow> rows;
    std::size_t offset = 0;
    for (const auto& piece : pieces) {
        for (const auto& b : piece.basis()) {
            FpRow r(d, 0);
            std::copy(b.begin(), b.end(), r.begin() + static_cast<std::ptrdiff_t>(offset));
            rows.push_back(std::move(r));
        }
        offset += piece.dimension_of_space();
    }
    return WindowSubgroup(n, p, w, std::move(rows));
}

/// U cap X^{[lo,hi]} for a periodic subgroup U of R^n: the kernel of w -> w mod U on the window.
inline WindowSubgroup window_intersection(const SubmoduleGens& u, Window w) {
    const std::size_t n = u.n();
    std::vector<LaurentVector> images;
    for (std::int64_t pos = w.lo; pos <= w.hi; ++pos)
        for (std::size_t c = 0; c < n; ++c) images.push_back(reduce_modulo(u, LaurentVector::lamp(n, u.p(), c, pos)));
    const detail::DenseFamily fam(images);
    std::vector<FpRow> dense;
    for (const auto& im : images) dense.push_back(fam.dense(im));
    return WindowSubgroup(n, u.p(), w, kernel_of(dense, u.p()));
}

inline constexpr std::uint64_t default_subspace_budget = 100'000;

/// All subgroups of the window X^{[lo,hi]}: every reduced echelon basis, sorted.
inline std::vector<WindowSubgroup> enumerate_subspaces(std::size_t n, std::uint32_t p, Window w,
                                                       std::uint64_t budget = default_subspace_budget) {
    check_modulus(p);
    const std::size_t d = n * w.cells();
    // Count via Gaussian binomials before enumerating.
    std::uint64_t total = 0;
    for (std::size_t k = 0; k <= d; ++k) {
        long double num = 1, den = 1;
        for (std::size_t i = 0; i < k; ++i) {
            num *= std::pow(static_cast<long double>(p), static_cast<long double>(d - i)) - 1;
            den *= std::pow(static_cast<long double>(p), static_cast<long double>(i + 1)) - 1;
        }
        total += static_cast<std::uint64_t>(std::llround(num / den));
        if (total > budget) throw resource_error("subspace enumeration exceeds the budget", total);
    }
    std::vector<WindowSubgroup> out;
    for (std::size_t k = 0; k <= d; ++k) {
        // Choose pivot columns, then free entries right of each pivot in non-pivot columns.
        std::vector<std::size_t> piv(k);
        for (std::size_t i = 0; i < k; ++i) piv[i] = i;
        while (true) {
            std::vector<std::pair<std::size_t, std::size_t>> free_slots;
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = piv[r] + 1; c < d; ++c)
                    if (std::find(piv.begin(), piv.end(), c) == piv.end()) free_slots.emplace_back(r, c);
            std::vector<coeff_t> digits(free_slots.size(), 0);
            while (true) {
                std::vector<FpRow> rows(k, FpRow(d, 0));
                for (std::size_t r = 0; r < k; ++r) rows[r][piv[r]] = 1;
                for (std::size_t s = 0; s < free_slots.size(); ++s) rows[free_slots[s].first][free_slots[s].second] = digits[s];
                out.emplace_back(n, p, w, std::move(rows));
                std::size_t s = 0;
                while (s < digits.size() && ++digits[s] == p) digits[s++] = 0;
                if (s == digits.size()) break;
            }
            // Next k-subset of pivot columns.
            std::size_t i = k;
            while (i > 0 && piv[i - 1] == d - k + i - 1) --i;
            if (i == 0) break;
            ++piv[i - 1];
            for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Basis row as a string: digits ("0120") for p <= 10, comma separated otherwise.
inline std::string row_string(const FpRow& r, std::uint32_t p) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (p > 10 && i > 0) s += ',';
        s += std::to_string(r[i]);
    }
    return s;
}

}  // namespace lamplighter
