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

// JSON mirrors of the text formats, used by the command-line tool.

#include <string>
#include <vector>

#include "json.hpp"
#include "lamplighter/io.hpp"
#include "lamplighter/irs.hpp"

namespace lamplighter::json_io {

using nlohmann::json;

inline constexpr const char* triple_schema = "lamplighter.triple/1";
inline constexpr const char* distribution_schema = "lamplighter.window-distribution/1";
inline constexpr const char* mu_schema = "lamplighter.mu/1";

inline json to_json(const SubmoduleGens& u) {
    json g = json::array();
    for (const auto& v : u.generators()) g.push_back(to_text(v));
    return {{"n", u.n()}, {"p", u.p()}, {"e", u.period()}, {"generators", g}};
}

inline json to_json(const SubgroupTriple& V) {
    json j = to_json(V.u);
    j["schema"] = triple_schema;
    j["s"] = V.s;
    j["v"] = to_text(V.v);
    return j;
}

inline SubmoduleGens submodule_from_json(const json& j) {
    const auto n = j.at("n").get<std::size_t>();
    const auto p = j.at("p").get<std::uint32_t>();
    check_modulus(p);
    std::vector<LaurentVector> gens;
    for (const auto& g : j.at("generators")) gens.push_back(parse_vector(g.get<std::string>(), n, p));
    return SubmoduleGens(n, p, j.at("e").get<std::int64_t>(), std::move(gens));
}

inline SubgroupTriple triple_from_json(const json& j) {
    if (j.value("schema", std::string(triple_schema)) != triple_schema) throw parse_error("unsupported triple schema");
    SubmoduleGens u = submodule_from_json(j);
    LaurentVector v = parse_vector(j.at("v").get<std::string>(), u.n(), u.p());
    return make_triple(j.at("s").get<std::int64_t>(), std::move(u), std::move(v));
}

/// A triple from either the text format or its JSON mirror.
inline SubgroupTriple triple_from_any(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            return triple_from_json(json::parse(text));
        } catch (const json::exception& e) {
            throw parse_error(std::string("bad triple JSON: ") + e.what());
        }
    }
    return parse_triple(text);
}

inline json to_json(const WindowDistribution& d) {
    json support = json::array();
    for (const auto& [h, q] : d.support()) {
        json rows = json::array();
        for (const auto& r : h.basis()) rows.push_back(row_string(r, h.p()));
        support.push_back({{"basis", rows}, {"dimension", h.dimension()}, {"probability", q.str()}});
    }
    return {{"schema", distribution_schema}, {"n", d.n()}, {"p", d.p()},
            {"window", {d.window().lo, d.window().hi}}, {"support", support}};
}

inline Rational parse_rational(const std::string& s) {
    try {
        return Rational(s);
    } catch (const std::exception&) {
        throw parse_error("bad rational '" + s + "'");
    }
}

/**
 * Invariant measure from
 *   {"schema": "lamplighter.mu/1", "n": 1, "p": 2,
 *    "atoms": [{"kind": "full" | "trivial" | "orbit", "weight": "1/2",
 *               "module": "n=1 e=2 p=2\n(1)"}]}
 * where "module" (orbit atoms only) is a submodule block, as one string or a list of lines.
 */
inline LazyIRS mu_from_json(const json& j) {
    try {
        if (j.value("schema", std::string(mu_schema)) != mu_schema) throw parse_error("unsupported measure schema");
        const auto n = j.at("n").get<std::size_t>();
        const auto p = j.at("p").get<std::uint32_t>();
        check_modulus(p);
        std::vector<std::pair<Rational, LazyIRS>> parts;
        for (const auto& a : j.at("atoms")) {
            const std::string kind = a.at("kind").get<std::string>();
            const Rational w = parse_rational(a.at("weight").get<std::string>());
            if (kind == "full") {
                parts.emplace_back(w, irs_full(n, p));
            } else if (kind == "trivial") {
                parts.emplace_back(w, irs_trivial(n, p));
            } else if (kind == "orbit") {
                std::string text;
                const auto& m = a.at("module");
                if (m.is_array())
                    for (const auto& line : m) text += line.get<std::string>() + "\n";
                else
                    text = m.get<std::string>();
                const SubmoduleGens u = parse_submodule(text);
                if (u.n() != n || u.p() != p) throw parse_error("orbit module lives in another ambient");
                parts.emplace_back(w, irs_orbit(u));
            } else {
                throw parse_error("unknown atom kind '" + kind + "'");
            }
        }
        if (parts.size() == 1 && parts.front().first == 1) return parts.front().second;
        return irs_mixture(std::move(parts));
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad measure JSON: ") + e.what());
    }
}

}  // namespace lamplighter::json_io
