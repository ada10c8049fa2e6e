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
 * @file io.hpp
 * @brief Text formats for polynomials, vectors, submodules and triples.
 *
 *   polynomial      1+x^2+2*x^5, x^-3*(1+x), 0
 *   vector          (1+x, 0)
 *   submodule       n=<n> e=<e> p=<p>, then one vector per line
 *   triple          s=<s>, a submodule block, v=<vector>
 *
 * '#' starts a comment; blank lines are ignored.  Exponents are those of x;
 * the lamp at position i is x^-i.
 */

#include <cctype>
#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "group.hpp"
#include "module.hpp"

namespace lamplighter {

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::int64_t parse_int(std::string_view s, std::size_t line, const char* what) {
    s = trim(s);
    std::int64_t v = 0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw parse_error(std::string("expected an integer for ") + what + ", got '" + std::string(s) + "'", line);
    return v;
}

inline std::string monomial_text(coeff_t c, std::int64_t k) {
    std::string s;
    if (k == 0) return std::to_string(c);
    if (c != 1) s = std::to_string(c) + "*";
    s += "x";
    if (k != 1) s += "^" + std::to_string(k);
    return s;
}

/// Sum of terms "c", "x", "x^k", "c*x^k" with signs '+' or '-'; exponents may be negative.
inline std::map<std::int64_t, coeff_t> parse_terms(std::string_view s, std::uint32_t p, std::size_t line) {
    std::map<std::int64_t, coeff_t> terms;
    s = trim(s);
    if (s == "0") return terms;
    std::size_t i = 0;
    auto fail = [&](const std::string& why) { throw parse_error(why + " in polynomial '" + std::string(s) + "'", line); };
    bool first = true;
    while (i < s.size()) {
        bool negative = false;
        while (i < s.size() && s[i] == ' ') ++i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            negative = s[i] == '-';
            ++i;
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        first = false;
        while (i < s.size() && s[i] == ' ') ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && !(s[j] == '-' && j > i && s[j - 1] != '^')) ++j;
        std::string_view term = trim(s.substr(i, j - i));
        i = j;
        if (term.empty()) fail("empty term");
        std::int64_t coef = 1, k = 0;
        const auto star = term.find('*');
        std::string_view mono = term;
        if (star != std::string_view::npos) {
            coef = parse_int(term.substr(0, star), line, "a coefficient");
            mono = trim(term.substr(star + 1));
            if (mono.empty() || mono.front() != 'x') fail("expected x after '*'");
        }
        if (!mono.empty() && mono.front() == 'x') {
            k = 1;
            if (mono.size() > 1) {
                if (mono[1] != '^') fail("expected '^' after x");
                k = parse_int(mono.substr(2), line, "an exponent");
            }
        } else {
            coef = parse_int(mono, line, "a coefficient");
        }
        if (coef <= 0 || coef >= static_cast<std::int64_t>(p)) fail("coefficient out of range [1, p)");
        if (terms.count(k)) fail("duplicate term x^" + std::to_string(k));
        terms[k] = negative ? mod_neg(static_cast<coeff_t>(coef), p) : static_cast<coeff_t>(coef);
    }
    return terms;
}

}  // namespace detail

inline std::string to_text(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string s;
    for (std::size_t k = 0; k < f.coefficients().size(); ++k) {
        if (f.coeff(k) == 0) continue;
        if (!s.empty()) s += "+";
        s += detail::monomial_text(f.coeff(k), static_cast<std::int64_t>(k));
    }
    return s;
}

/// Laurent polynomials with a negative lowest exponent print as x^-k*(body).
inline std::string to_text(const LaurentPoly& f) {
    if (f.is_zero()) return "0";
    if (f.offset() >= 0) return to_text(f.body().shifted_up(static_cast<std::size_t>(f.offset())));
    const bool single = f.body().degree() == std::optional<std::size_t>(0);
    if (single) return detail::monomial_text(f.body().coeff(0), f.offset());
    return "x^" + std::to_string(f.offset()) + "*(" + to_text(f.body()) + ")";
}

inline LaurentPoly parse_laurent(std::string_view s, std::uint32_t p, std::size_t line = 0) {
    s = detail::trim(s);
    std::int64_t shift = 0;
    // Optional x^k*( ... ) prefix.
    const auto open = s.find("*(");
    if (open != std::string_view::npos && s.back() == ')') {
        std::string_view head = detail::trim(s.substr(0, open));
        if (head.size() < 2 || head[0] != 'x' || head[1] != '^') throw parse_error("bad offset prefix '" + std::string(head) + "'", line);
        shift = detail::parse_int(head.substr(2), line, "an offset");
        s = s.substr(open + 2, s.size() - open - 3);
    }
    const auto terms = detail::parse_terms(s, p, line);
    LaurentPoly out(p);
    for (const auto& [k, c] : terms) out = out + LaurentPoly::monomial(p, c, k + shift);
    return out;
}

inline Poly parse_poly(std::string_view s, std::uint32_t p, std::size_t line = 0) {
    const LaurentPoly f = parse_laurent(s, p, line);
    if (f.is_zero()) return Poly(p);
    if (f.offset() < 0) throw parse_error("negative exponent in an ordinary polynomial", line);
    return f.body().shifted_up(static_cast<std::size_t>(f.offset()));
}

inline std::string to_text(const LaurentVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_text(v[i]);
    return s + ")";
}

inline LaurentVector parse_vector(std::string_view s, std::size_t n, std::uint32_t p, std::size_t line = 0) {
    s = detail::trim(s);
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw parse_error("a vector must be written (f1, ..., fn)", line);
    s = s.substr(1, s.size() - 2);
    std::vector<LaurentPoly> coords;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i < s.size() && s[i] == '(') ++depth;
        if (i < s.size() && s[i] == ')') --depth;
        if (i == s.size() || (s[i] == ',' && depth == 0)) {
            coords.push_back(parse_laurent(s.substr(start, i - start), p, line));
            start = i + 1;
        }
    }
    if (coords.size() != n)
        throw parse_error("expected " + std::to_string(n) + " coordinates, got " + std::to_string(coords.size()), line);
    return LaurentVector(std::move(coords));
}

/// Text lines with comments removed, paired with 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::string>> content_lines(std::istream& in) {
    std::vector<std::pair<std::size_t, std::string>> out;
    std::string raw;
    for (std::size_t no = 1; std::getline(in, raw); ++no) {
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.resize(hash);
        const auto t = detail::trim(raw);
        if (!t.empty()) out.emplace_back(no, std::string(t));
    }
    return out;
}

namespace detail {

/// Values of "key=value" fields separated by spaces.
inline std::map<std::string, std::string> fields(const std::string& s, std::size_t line) {
    std::map<std::string, std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0) throw parse_error("expected key=value, got '" + tok + "'", line);
        if (!out.emplace(tok.substr(0, eq), tok.substr(eq + 1)).second) throw parse_error("repeated key " + tok.substr(0, eq), line);
    }
    return out;
}

inline std::int64_t field_int(const std::map<std::string, std::string>& f, const std::string& key, std::size_t line) {
    const auto it = f.find(key);
    if (it == f.end()) throw parse_error("missing " + key + "=", line);
    return parse_int(it->second, line, key.c_str());
}

/// Parses a submodule block starting at lines[pos]; advances pos past its generators.
inline SubmoduleGens parse_block(const std::vector<std::pair<std::size_t, std::string>>& lines, std::size_t& pos) {
    if (pos >= lines.size()) throw parse_error("missing submodule header n=.. e=.. p=..", lines.empty() ? 0 : lines.back().first);
    const auto [hline, header] = lines[pos];
    const auto f = fields(header, hline);
    for (const auto& [k, v] : f)
        if (k != "n" && k != "e" && k != "p") throw parse_error("unknown header key " + k, hline);
    const std::int64_t n = field_int(f, "n", hline), e = field_int(f, "e", hline), p = field_int(f, "p", hline);
    if (n <= 0) throw parse_error("n must be positive", hline);
    if (e <= 0) throw parse_error("e must be positive", hline);
    if (p < 2 || p > static_cast<std::int64_t>(modulus_limit) || !is_prime(static_cast<std::uint32_t>(p)))
        throw parse_error("p must be a prime below " + std::to_string(modulus_limit), hline);
    ++pos;
    std::vector<LaurentVector> gens;
    while (pos < lines.size() && lines[pos].second.front() == '(') {
        gens.push_back(parse_vector(lines[pos].second, static_cast<std::size_t>(n), static_cast<std::uint32_t>(p), lines[pos].first));
        ++pos;
    }
    return SubmoduleGens(static_cast<std::size_t>(n), static_cast<std::uint32_t>(p), e, std::move(gens));
}

}  // namespace detail

inline std::string to_text(const SubmoduleGens& u) {
    std::string s = "n=" + std::to_string(u.n()) + " e=" + std::to_string(u.period()) + " p=" + std::to_string(u.p()) + "\n";
    for (const auto& g : u.generators()) s += to_text(g) + "\n";
    return s;
}

inline SubmoduleGens parse_submodule(std::istream& in) {
    const auto lines = content_lines(in);
    std::size_t pos = 0;
    SubmoduleGens u = detail::parse_block(lines, pos);
    if (pos != lines.size()) throw parse_error("unexpected content after the generators", lines[pos].first);
    return u;
}

inline SubmoduleGens parse_submodule(const std::string& text) {
    std::istringstream in(text);
    return parse_submodule(in);
}

inline std::string to_text(const SubgroupTriple& V) {
    return "s=" + std::to_string(V.s) + "\n" + to_text(V.u) + "v=" + to_text(V.v) + "\n";
}

inline SubgroupTriple parse_triple(std::istream& in) {
    const auto lines = content_lines(in);
    if (lines.empty()) throw parse_error("empty triple file", 0);
    const auto [sline, stext] = lines.front();
    if (stext.rfind("s=", 0) != 0) throw parse_error("first line must be s=<s>", sline);
    const std::int64_t s = detail::parse_int(std::string_view(stext).substr(2), sline, "s");
    std::size_t pos = 1;
    SubmoduleGens u = detail::parse_block(lines, pos);
    if (pos >= lines.size() || lines[pos].second.rfind("v=", 0) != 0)
        throw parse_error("expected v=<vector> after the generators", pos < lines.size() ? lines[pos].first : lines.back().first);
    const std::size_t vline = lines[pos].first;
    LaurentVector v = parse_vector(std::string_view(lines[pos].second).substr(2), u.n(), u.p(), vline);
    if (pos + 1 != lines.size()) throw parse_error("unexpected content after v=", lines[pos + 1].first);
    try {
        return make_triple(s, std::move(u), std::move(v));
    } catch (const std::logic_error& e) {
        throw parse_error(std::string("invalid triple: ") + e.what(), sline);
    }
}

inline SubgroupTriple parse_triple(const std::string& text) {
    std::istringstream in(text);
    return parse_triple(in);
}

}  // namespace lamplighter
