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

// Command-line front end.  Exit codes: 0 pass, 1 property violation, 2 usage or input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json_io.hpp"
#include "lamplighter/cbrank.hpp"
#include "lamplighter/construct.hpp"
#include "lamplighter/io.hpp"
#include "lamplighter/irs.hpp"
#include "lamplighter/selftest.hpp"

namespace {

using namespace lamplighter;
using json_io::json;

constexpr int exit_pass = 0;
constexpr int exit_violation = 1;
constexpr int exit_usage = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::pair<std::int64_t, std::int64_t> parse_pair(const std::string& s, const char* what) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw parse_error(std::string(what) + " must be written a,b");
    return {detail::parse_int(s.substr(0, comma), 0, what), detail::parse_int(s.substr(comma + 1), 0, what)};
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_count(std::uint32_t p, std::uint64_t k, std::uint64_t a, bool enumerate, std::uint64_t budget, bool as_json) {
    check_modulus(p);
    const BigInt formula = count_submodules_formula(p, k, a);
    json out{{"schema", "lamplighter.count/1"}, {"p", p}, {"k", k}, {"a", a}, {"formula", formula.str()}};
    bool match = true;
    if (enumerate) {
        const auto got = enumerate_submodules(p, static_cast<std::size_t>(k), static_cast<std::size_t>(a), budget).size();
        match = BigInt(got) == formula;
        out["enumerated"] = got;
        out["match"] = match;
    }
    if (as_json) {
        print_json(out);
    } else {
        std::cout << "formula " << formula.str();
        if (enumerate) std::cout << ", enumerated " << out["enumerated"].get<std::size_t>() << ", " << (match ? "MATCH" : "MISMATCH");
        std::cout << "\n";
    }
    return match ? exit_pass : exit_violation;
}

json invariants_json(const SubgroupTriple& V) {
    const InvariantReport inv = V.s > 0 ? r_value(V.u, V.s) : r_value(V.u);
    json out{{"schema", "lamplighter.invariants/1"}, {"s", V.s}, {"e", inv.e}, {"rk", inv.rk}, {"r", inv.r}};
    if (V.s > 0) {
        const QPoint q = phi_encoding(V);
        out["t_V"] = q.t;
        out["r_V"] = q.r;
    } else {
        out["t_V"] = nullptr;
        out["r_V"] = nullptr;
    }
    return out;
}

int cmd_invariants(const std::string& path) {
    print_json(invariants_json(json_io::triple_from_any(read_file(path))));
    return exit_pass;
}

int cmd_construct(std::size_t n, std::uint32_t p, std::int64_t b, std::int64_t r, bool as_json) {
    const SubmoduleGens u = construct_prescribed(n, p, b, r);
    const InvariantReport inv = r_value(u);
    const bool ok = inv.e == b && static_cast<std::int64_t>(rk_m(u, b)) == r;
    if (as_json) {
        json out = json_io::to_json(u);
        out["schema"] = "lamplighter.submodule/1";
        out["exponent"] = inv.e;
        out["rk_b"] = rk_m(u, b);
        out["verified"] = ok;
        print_json(out);
    } else {
        std::cout << to_text(u);
    }
    return ok ? exit_pass : exit_violation;
}

int cmd_approach(const std::string& triple_path, const std::string& target, std::size_t count, const std::string& ball_text,
                 const std::string& out_dir) {
    const SubgroupTriple V = json_io::triple_from_any(read_file(triple_path));
    const auto [tt, rr] = parse_pair(target, "--target");
    const QPoint q{tt, rr};
    const auto comma1 = ball_text.find(',');
    const auto comma2 = ball_text.find(',', comma1 == std::string::npos ? 0 : comma1 + 1);
    if (comma1 == std::string::npos || comma2 == std::string::npos) throw parse_error("--ball must be written R,S,H");
    const BallSpec ball{detail::parse_int(ball_text.substr(0, comma1), 0, "radius"),
                        detail::parse_int(ball_text.substr(comma1 + 1, comma2 - comma1 - 1), 0, "shift bound")};
    const std::int64_t horizon = detail::parse_int(ball_text.substr(comma2 + 1), 0, "horizon");
    if (horizon < 1 || static_cast<std::size_t>(horizon) > count) throw std::domain_error("horizon must lie in [1, count]");

    const auto seq = build_approach_sequence(V, q, count);
    bool ok = true;
    json terms = json::array();
    for (std::size_t m = 0; m < seq.size(); ++m) {
        const QPoint got = phi_encoding(seq[m]);
        ok = ok && got == q;
        json t = json_io::to_json(seq[m]);
        t["index"] = m + 1;
        t["t_V"] = got.t;
        t["r_V"] = got.r;
        terms.push_back(t);
        if (!out_dir.empty()) {
            std::filesystem::create_directories(out_dir);
            char name[32];
            std::snprintf(name, sizeof name, "term_%03zu.triple", m + 1);
            std::ofstream(std::filesystem::path(out_dir) / name) << to_text(seq[m]);
        }
    }
    const auto conv = converges_on_ball([&](std::int64_t m) { return seq[static_cast<std::size_t>(m - 1)]; }, V, ball, horizon);
    json cert{{"converged", conv.converged},
              {"stabilization_index", conv.stabilization_index},
              {"test_set_size", conv.test_set_size},
              {"radius", ball.radius},
              {"shift_bound", ball.shift_bound},
              {"horizon", horizon}};
    if (conv.witness) cert["witness"] = {{"v", to_text(conv.witness->v)}, {"t", conv.witness->s}, {"term", conv.witness_term}};
    json classification;
    try {
        const auto cl = classify_limit(seq, V);
        json groups = json::array();
        for (const auto& g : cl.groups)
            groups.push_back({{"t", g.q.t}, {"r", g.q.r}, {"size", g.indices.size()}, {"divides", g.divides},
                              {"strict", g.strict}, {"stabilizing", g.stabilizing}});
        classification = {{"consistent", true}, {"groups", groups}};
    } catch (const consistency_error& e) {
        classification = {{"consistent", false}, {"error", e.what()}};
        ok = false;
    }
    ok = ok && conv.converged;
    const QPoint qv = phi_encoding(V);
    json out{{"schema", "lamplighter.approach/1"},
             {"limit", json_io::to_json(V)},
             {"phi_limit", {qv.t, qv.r}},
             {"target", {q.t, q.r}},
             {"certificate", cert},
             {"classification", classification},
             {"pass", ok}};
    if (out_dir.empty()) out["terms"] = terms;
    print_json(out);
    return ok ? exit_pass : exit_violation;
}

int cmd_cb(std::int64_t tmax, std::int64_t prodmax) {
    const auto P = q_truncation(tmax, prodmax);
    const auto level = cb_levels(P);
    bool ok = true;
    std::cout << "t,r,level\n";
    for (std::size_t i = 0; i < P.size(); ++i) {
        const QPoint q = P.elements()[i];
        std::cout << q.t << "," << q.r << "," << level[i] << "\n";
        ok = ok && static_cast<std::int64_t>(level[i]) == q_level_closed_form(q);
    }
    if (!ok) std::cerr << "violation: a level differs from t*r\n";
    return ok ? exit_pass : exit_violation;
}

int cmd_irs(const std::string& mu_path, std::int64_t m, std::int64_t j, bool csv) {
    json spec;
    try {
        spec = json::parse(read_file(mu_path));
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad measure JSON: ") + e.what());
    }
    const LazyIRS mu = json_io::mu_from_json(spec);
    if (csv) {
        bool ok = true;
        std::cout << "m,j,tv,sharp_bound,conservative_bound,pass,literal_held\n";
        for (std::int64_t mm = 1; mm <= m; mm *= 2) {
            const BoundReport r = check_bound(mu, mm, j);
            ok = ok && r.pass;
            std::cout << mm << "," << j << "," << r.tv.str() << "," << r.sharp_bound.str() << "," << r.conservative_bound.str()
                      << "," << (r.pass ? 1 : 0) << "," << (r.literal_held ? 1 : 0) << "\n";
        }
        return ok ? exit_pass : exit_violation;
    }
    const BoundReport r = check_bound(mu, m, j);
    json out{{"schema", "lamplighter.irs-bound/1"},
             {"m", m},
             {"j", j},
             {"tv", r.tv.str()},
             {"sharp_bound", r.sharp_bound.str()},
             {"conservative_bound", r.conservative_bound.str()},
             {"literal_bound_held", r.literal_held},
             {"pass", r.pass},
             {"mu_m_marginal", json_io::to_json(mu_m_marginal(mu, m, {0, j}))},
             {"mu_marginal", json_io::to_json(mu.marginal({0, j}))}};
    print_json(out);
    return r.pass ? exit_pass : exit_violation;
}

int cmd_mix(std::int64_t nai, std::uint64_t trials, std::uint64_t seed, const std::string& window, const std::string& mu1_path,
            const std::string& mu2_path) {
    const auto [lo, hi] = parse_pair(window, "--window");
    auto load = [](const std::string& path, LazyIRS fallback) {
        if (path.empty()) return fallback;
        try {
            return json_io::mu_from_json(json::parse(read_file(path)));
        } catch (const json::exception& e) {
            throw parse_error(std::string("bad measure JSON: ") + e.what());
        }
    };
    const LazyIRS mu1 = load(mu1_path, irs_full(1, 2));
    const LazyIRS mu2 = load(mu2_path, irs_trivial(1, 2));
    const auto rep = psi_mix(mu1, mu2, nai, make_window(lo, hi), trials, seed);
    json out{{"schema", "lamplighter.irs-mix/1"},
             {"n_ai", nai},
             {"trials", trials},
             {"seed", seed},
             {"prng", "splitmix64"},
             {"tv", rep.tv.str()},
             {"tv_decimal", static_cast<double>(rep.tv)},
             {"tolerance", rep.tolerance},
             {"lambda_all_in_J", rep.lambda_all_j.str()},
             {"lambda_all_in_K", rep.lambda_all_k.str()},
             {"deviation_bound", rep.deviation_bound},
             {"invariance_estimate", rep.invariance_estimate.str()},
             {"invariance_exact", rep.invariance_exact.str()},
             {"pass", rep.within_bound},
             {"empirical", json_io::to_json(rep.empirical)},
             {"target", json_io::to_json(rep.target)}};
    print_json(out);
    return rep.within_bound ? exit_pass : exit_violation;
}

int cmd_selftest(std::uint64_t seed, const std::string& output) {
    const auto results = run_full_acceptance(seed);
    const std::string report = format_report(seed, results);
    if (output.empty())
        std::cout << report;
    else
        std::ofstream(output) << report;
    for (const auto& r : results)
        if (!r.pass) return exit_violation;
    return exit_pass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Subgroups of lamplighter groups: invariants, constructions and measure approximants"};
    app.require_subcommand(1);

    std::uint32_t p = 2;
    std::uint64_t k = 1, a = 0, budget = default_enumeration_budget;
    bool enumerate = false, as_json = false;
    auto* count = app.add_subcommand("count", "number of submodules of R^k with codimension a");
    count->add_option("p", p, "prime")->required();
    count->add_option("k", k, "rank")->required();
    count->add_option("a", a, "codimension")->required();
    count->add_flag("--enumerate", enumerate, "also enumerate canonical forms and compare");
    count->add_option("--budget", budget, "maximal number of candidates");
    count->add_flag("--json", as_json, "JSON output");

    std::string triple_path;
    auto* invariants = app.add_subcommand("invariants", "s, e, rk, r, t_V, r_V of a triple file");
    invariants->add_option("triple", triple_path, "triple file (text or JSON)")->required();

    std::size_t n = 1;
    std::int64_t b = 1, r = 1;
    auto* construct = app.add_subcommand("construct", "a subgroup U of R^n with e(U) = b and rk_b(U) = r");
    construct->add_option("--n", n, "ambient rank")->required();
    construct->add_option("--p", p, "prime")->required();
    construct->add_option("--b", b, "exponent")->required();
    construct->add_option("--r", r, "rank")->required();
    construct->add_flag("--json", as_json, "JSON output");

    std::string target, ball = "4,4,25", out_dir;
    std::size_t terms = 25;
    auto* approach = app.add_subcommand("approach", "a sequence converging to a triple with prescribed encoding");
    approach->add_option("--triple", triple_path, "triple file of the limit")->required();
    approach->add_option("--target", target, "target point t,r")->required();
    approach->add_option("--count", terms, "number of terms");
    approach->add_option("--ball", ball, "radius,shift bound,horizon");
    approach->add_option("--out", out_dir, "directory for term_NNN.triple files");

    std::int64_t tmax = 6, prodmax = 6;
    auto* cb = app.add_subcommand("cb", "CSV of Cantor-Bendixson levels of a truncation of Q");
    cb->alias("cb-levels");
    cb->add_option("--tmax", tmax, "largest t")->required();
    cb->add_option("--prodmax", prodmax, "largest t*r")->required();

    std::string mu_path;
    std::int64_t m = 2, j = 1;
    bool csv = false;
    auto* irs = app.add_subcommand("irs", "exact TV between window marginals of mu_m and mu");
    irs->alias("irs-approx");
    irs->add_option("--mu", mu_path, "measure JSON")->required();
    irs->add_option("--m", m, "block length")->required();
    irs->add_option("--j", j, "window [0, j]")->required();
    irs->add_flag("--csv", csv, "trend table over m = 1, 2, 4, ..., M");

    std::int64_t nai = 11;
    std::uint64_t trials = 100000, seed = default_selftest_seed;
    std::string window = "0,0", mu1_path, mu2_path;
    auto* mixc = app.add_subcommand("mix", "Monte Carlo splice of two measures along majority sets");
    mixc->alias("irs-mix");
    mixc->add_option("--nai", nai, "odd length of the majority set")->required();
    mixc->add_option("--trials", trials, "number of trials");
    mixc->add_option("--seed", seed, "SplitMix64 seed")->required();
    mixc->add_option("--window", window, "window a,b");
    mixc->add_option("--mu1", mu1_path, "measure JSON (default: point mass at A)");
    mixc->add_option("--mu2", mu2_path, "measure JSON (default: point mass at 0)");

    std::string output;
    auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
    selftest->add_option("--seed", seed, "SplitMix64 master seed");
    selftest->add_option("--output", output, "write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_pass : exit_usage;
    }

    try {
        if (*count) return cmd_count(p, k, a, enumerate, budget, as_json);
        if (*invariants) return cmd_invariants(triple_path);
        if (*construct) return cmd_construct(n, p, b, r, as_json);
        if (*approach) return cmd_approach(triple_path, target, terms, ball, out_dir);
        if (*cb) return cmd_cb(tmax, prodmax);
        if (*irs) return cmd_irs(mu_path, m, j, csv);
        if (*mixc) return cmd_mix(nai, trials, seed, window, mu1_path, mu2_path);
        if (*selftest) return cmd_selftest(seed, output);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const consistency_error& e) {
        std::cerr << "violation: " << e.what() << "\n";
        return exit_violation;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
