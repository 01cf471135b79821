// Copyright 2026 The efxgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance run: one PASS/FAIL line per criterion. Criteria listed with
// --known-failure are still evaluated and printed; they only stop counting
// against the exit status. The process fails if any other criterion fails
// or if a listed one unexpectedly passes.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "efx/efx.hpp"

namespace {

using namespace efx;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_seconds(double s) {
    std::ostringstream out;
    out.precision(3);
    out << s << "s";
    return out.str();
}

std::string fmt_bundles(const Allocation& x) {
    std::ostringstream out;
    out << "{";
    const auto bundles = x.bundles();
    for (std::size_t a = 0; a < bundles.size(); ++a) {
        out << (a ? " " : "") << "[";
        for (std::size_t k = 0; k < bundles[a].size(); ++k) out << (k ? "," : "") << bundles[a][k];
        out << "]";
    }
    out << "}";
    return out.str();
}

// Envied-singleton observations gathered while the other criteria run.
struct SingletonLedger {
    std::size_t checked = 0;
    std::size_t failures = 0;

    void observe(const Instance& inst, const Allocation& x) {
        if (!x.is_orientation(inst) || !check_efx(inst, x).pass) return;
        ++checked;
        if (!check_envied_singleton(inst, x).pass) ++failures;
    }

    void observe(const Instance& inst, const PipelineTrace& trace) {
        for (const auto& s : trace.snapshots) observe(inst, s.allocation);
    }
};

SingletonLedger singleton;

std::vector<Allocation> all_efx_orientations(const Instance& inst) {
    std::vector<Allocation> out;
    const std::size_t m = inst.items();
    for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
        Allocation x = empty_allocation(inst);
        for (EdgeId e = 0; e < m; ++e) x.assign(e, ((mask >> e) & 1U) ? inst.edge(e).v : inst.edge(e).u);
        if (check_efx(inst, x).pass) out.push_back(x);
    }
    return out;
}

bool has_equal_split(const std::vector<long>& p) {
    long total = 0;
    for (long v : p) total += v;
    if (total % 2 != 0) return false;
    for (std::uint64_t mask = 0; mask < (1ULL << p.size()); ++mask) {
        long part = 0;
        for (std::size_t k = 0; k < p.size(); ++k) {
            if ((mask >> k) & 1U) part += p[k];
        }
        if (2 * part == total) return true;
    }
    return false;
}

Outcome no_orientation(const std::vector<std::pair<std::string, Instance>>& cases) {
    Outcome out{true, ""};
    for (const auto& [name, inst] : cases) {
        const auto start = Clock::now();
        const auto r = decide_efx_orientation(inst);
        const double took = seconds_since(start);
        const bool ok = !r.exists && took < 1.0;
        out.pass = out.pass && ok;
        out.detail += name + " 2^" + std::to_string(inst.items()) + " exists=" + (r.exists ? "true" : "false") +
                      " " + fmt_seconds(took) + "; ";
    }
    return out;
}

Outcome c1() {
    return no_orientation({{"c4-counter", c4_counter(Rational(1, 100), Rational(1, 1'000'000))}});
}

Outcome c2() {
    const Rational eps(1, 100);
    return no_orientation({{"p4-q3", p4_q3(eps)}, {"p4-q4", p4_qn(4, eps)}, {"p4-q5", p4_qn(5, eps)}});
}

Outcome c3() {
    const Instance inst = p3_block(Rational(1, 100));
    OracleOptions opt;
    opt.count = true;
    const auto r = decide_efx_orientation(inst, opt);
    const auto witnesses = all_efx_orientations(inst);
    bool envied = !witnesses.empty();
    for (const auto& x : witnesses) envied = envied && is_envied(inst, x, 2);
    const bool pass = r.count == 2 && witnesses.size() == 2 && envied;
    return {pass, "count=" + std::to_string(r.count.value_or(0)) + " enumerated=" + std::to_string(witnesses.size()) +
                      " third agent envied in all=" + (envied ? "yes" : "no")};
}

Outcome c4() { return no_orientation({{"p6-counter", p6_counter(Rational(1, 100), Rational(1, 1'000'000))}}); }

Outcome c5() {
    bool pass = true;
    std::string detail;
    for (const auto& p : std::vector<std::vector<long>>{{1, 2, 3}, {1, 1, 1}, {2}}) {
        const bool exists = decide_efx_orientation(reduce_partition(p)).exists;
        const bool want = p.size() == 3 && p[2] == 3;
        pass = pass && exists == want;
        detail += std::string(exists ? "exists" : "none") + " ";
    }
    std::mt19937_64 rng(5);
    std::size_t agree = 0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<long> p(std::uniform_int_distribution<std::size_t>(1, 4)(rng));
        for (auto& v : p) v = std::uniform_int_distribution<long>(0, 6)(rng);
        if (decide_efx_orientation(reduce_partition(p)).exists == has_equal_split(p)) ++agree;
    }
    pass = pass && agree == 20;
    return {pass, detail + "random agreement " + std::to_string(agree) + "/20"};
}

Outcome c6() {
    const Instance inst = running_example();
    const Bipartition bip = Bipartition::from_t_side(7, {4, 5, 6});
    const auto reference = [&](const std::vector<Bundle>& b) { return Allocation::from_bundles(inst.items(), b); };

    const Allocation greedy = greedy_orientation(inst, bip);
    const bool greedy_ok = greedy == reference({{0}, {1}, {3}, {16}, {2}, {8}, {13}});

    const Allocation saturated = saturate_non_envied(inst, greedy, bip);
    const bool saturate_ok =
        saturated == reference({{0}, {1}, {3}, {15, 16}, {2, 17}, {4, 6, 8}, {9, 11, 13, 14}});

    PipelineTrace trace;
    const Allocation final_x = complete_efx(inst, bip, &trace);
    singleton.observe(inst, trace);
    std::size_t wanted_swaps = 0;
    std::size_t other_swaps = 0;
    std::vector<std::pair<Agent, EdgeId>> gifts;
    for (const auto& ev : trace.events) {
        if (ev.action == "swap") (ev.agent == 1 && ev.other == Agent{4} ? wanted_swaps : other_swaps)++;
        if (ev.stage == "completion") gifts.emplace_back(ev.agent, ev.edges.front());
    }
    const bool swap_ok = wanted_swaps == 1 && other_swaps == 0;
    const bool completion_ok =
        gifts == std::vector<std::pair<Agent, EdgeId>>{{4, 5}, {4, 10}} && final_x.owner(5) == 4;

    const auto mark = [](bool ok) { return ok ? "ok" : "MISMATCH"; };
    std::string detail = std::string("greedy ") + mark(greedy_ok) + "; saturate " + mark(saturate_ok) +
                         " (got " + fmt_bundles(saturated) + "); swaps " + std::to_string(wanted_swaps) +
                         " expected/" + std::to_string(other_swaps) + " other " + mark(swap_ok) +
                         "; completion gifts " + std::to_string(gifts.size()) + " " + mark(completion_ok);
    return {greedy_ok && saturate_ok && swap_ok && completion_ok, detail};
}

std::vector<Instance> bipartite_suite() {
    std::vector<Instance> out;
    std::mt19937_64 rng(7);
    for (std::uint64_t k = 0; k < 1000; ++k) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 8)(rng);
        const std::size_t q = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
        const std::size_t m = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(20, (n - 1) * q))(rng);
        out.push_back(random_instance({n, m, q, RandomFamily::bipartite, 1000, k % 2 == 0 ? 1 : 12, k, k % 5 == 0}));
    }
    return out;
}

Outcome c7(const std::vector<Instance>& suite) {
    const auto start = Clock::now();
    std::size_t failures = 0;
    std::size_t swaps = 0;
    std::size_t resaturations = 0;
    std::size_t gifts = 0;
    for (const auto& inst : suite) {
        const Bipartition bip = require_bipartite(inst);
        PipelineTrace trace;
        bool ok = true;
        try {
            const Allocation x = complete_efx(inst, bip, &trace);
            ok = x.complete() && check_efx(inst, x).pass && trace.snapshots.size() == 4;
            if (ok) {
                const auto& s = trace.snapshots;
                const auto& g = s[0].flags;
                const auto& t = s[1].flags;
                const auto& u = s[2].flags;
                ok = g.p1 && g.p2 && g.p3 && t.p1 && t.p2 && t.p3 && t.p4 && u.p1 && u.p2 && u.p3 && u.p4 && u.p5;
                for (std::size_t k = 0; k < 3 && ok; ++k) ok = envied_within_s(inst, s[k].allocation, bip);
                for (std::size_t k = 1; k < 3 && ok; ++k) {
                    ok = leftovers_between_envied_and_free(inst, s[k].allocation, bip) &&
                         non_envied_satisfied(inst, s[k].allocation, bip);
                }
            }
        } catch (const std::exception&) {
            ok = false;
        }
        if (!ok) ++failures;
        singleton.observe(inst, trace);
        for (const auto& ev : trace.events) {
            swaps += ev.action == "swap" ? 1 : 0;
            resaturations += ev.action == "resaturate" ? 1 : 0;
            gifts += ev.stage == "completion" ? 1 : 0;
        }
    }
    const double took = seconds_since(start);
    return {failures == 0 && took < 60.0, std::to_string(suite.size()) + " instances, " + std::to_string(failures) +
                                              " failures, " + std::to_string(swaps) + " swaps (" +
                                              std::to_string(resaturations) + " followed by re-saturation), " +
                                              std::to_string(gifts) + " leftover gifts, " + fmt_seconds(took)};
}

Outcome c8(const std::vector<Instance>& suite) {
    std::size_t failures = 0;
    for (const auto& inst : suite) {
        bool ok = true;
        try {
            PipelineTrace trace;
            const Allocation x = half_efx_orientation(inst, &trace);
            singleton.observe(inst, trace);
            std::size_t full = 0;
            for (Agent a = 0; a < inst.agents(); ++a) {
                const Rational alpha = achieved_alpha(inst, x, a);
                full += alpha == Rational(1) ? 1 : 0;
                ok = ok && !(alpha < Rational(1, 2));
            }
            ok = ok && x.complete() && x.is_orientation(inst) && 2 * full >= inst.agents() &&
                 check_efx(inst, x, Rational(1, 2)).pass;
        } catch (const std::exception&) {
            ok = false;
        }
        if (!ok) ++failures;
    }
    return {failures == 0, std::to_string(suite.size()) + " instances, " + std::to_string(failures) + " failures"};
}

Outcome c9() {
    std::mt19937_64 rng(9);
    std::size_t failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t size = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
        std::vector<EdgeItem> edges;
        for (std::size_t k = 0; k < size; ++k) {
            const long num = std::uniform_int_distribution<long>(1, 1000)(rng);
            const long den = std::uniform_int_distribution<long>(1, 8)(rng);
            edges.push_back(EdgeItem{0, 1, Rational(num, static_cast<unsigned long>(den)), Rational(1)});
        }
        const Instance inst(2, std::move(edges));
        const CutConfig config = cut(inst, 0, 1);
        const std::vector<Bundle> parts{config.c1, config.c2};
        Bundle joined = bundle_union(config.c1, config.c2);
        const bool ok = joined == inst.edges_between(0, 1) && is_efx_feasible(inst, 0, parts, 0) &&
                        is_efx_feasible(inst, 0, parts, 1);
        if (!ok) ++failures;
    }
    return {failures == 0, "1000 multisets, " + std::to_string(failures) + " failures"};
}

Outcome c10() {
    std::mt19937_64 rng(10);
    auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    std::size_t failures = 0;
    std::size_t rule3 = 0;
    std::map<std::string, std::size_t> branches;
    for (std::uint64_t k = 0; k < 300; ++k) {
        const std::size_t n = pick(2, 9);
        const std::size_t q = pick(1, 5);
        const auto inst = random_instance({n, pick(n - 1, (n - 1) * q), q, RandomFamily::star, 1000, static_cast<long>(1 + k % 6), k, false});
        try {
            const Allocation x = solve_multistar(inst);
            singleton.observe(inst, x);
            if (!(x.complete() && x.is_orientation(inst) && check_efx(inst, x).pass)) ++failures;
        } catch (const std::exception&) {
            ++failures;
        }
    }
    for (std::uint64_t k = 0; k < 300; ++k) {
        const std::size_t n = pick(2, 10);
        const auto inst = random_instance({n, pick(n - 1, 2 * (n - 1)), 2, RandomFamily::tree, 1000, static_cast<long>(1 + k % 6), k, false});
        try {
            const Allocation x = solve_multitree_d4_q2(inst, [&](const TreeStep& step) {
                singleton.observe(inst, step.state);
                rule3 += step.rule == 3 ? 1 : 0;
            });
            if (!(x.complete() && x.is_orientation(inst) && check_efx(inst, x).pass)) ++failures;
        } catch (const std::exception&) {
            ++failures;
        }
    }
    for (std::uint64_t k = 0; k < 200; ++k) {
        const std::size_t n = pick(4, 8);
        const std::size_t q = pick(1, 3);
        const auto inst = random_instance({n, pick(n, n * q), q, RandomFamily::cycle, 1000, static_cast<long>(1 + k % 6), k, k % 3 == 0});
        try {
            CycleCase branch{};
            const Allocation x = solve_multicycle(inst, &branch);
            ++branches[std::string(to_string(branch))];
            if (!(x.complete() && check_efx(inst, x).pass)) ++failures;
        } catch (const std::exception&) {
            ++failures;
        }
    }
    std::string spread;
    for (const auto& [name, count] : branches) spread += " " + name + "=" + std::to_string(count);
    return {failures == 0, "800 instances, " + std::to_string(failures) + " failures, tree rule-3 steps " +
                               std::to_string(rule3) + ", cycle branches" + spread};
}

Outcome c11() {
    std::mt19937_64 rng(11);
    auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    std::size_t failures = 0;
    for (std::uint64_t k = 0; k < 100; ++k) {
        const std::size_t n = pick(2, 5);
        const std::size_t q = pick(1, 4);
        std::size_t cap = 1;
        for (std::uint64_t states = n; states * n <= 10'000'000; states *= n) ++cap;
        const std::size_t m = pick(1, std::min(cap, (n - 1) * q));
        const auto inst = random_instance({n, m, q, RandomFamily::bipartite, 1000, static_cast<long>(1 + k % 4), k, false});
        try {
            const auto r = decide_efx_allocation(inst);
            const Allocation x = complete_efx(inst);
            if (!(r.exists && check_efx(inst, *r.witness).pass && check_efx(inst, x).pass && x.complete())) ++failures;
        } catch (const std::exception&) {
            ++failures;
        }
    }
    std::size_t disagreements = 0;
    for (std::uint64_t k = 0; k < 50; ++k) {
        const std::size_t n = pick(2, 5);
        const std::size_t q = pick(1, 3);
        const auto inst = random_instance({n, pick(1, std::min<std::size_t>(10, (n - 1) * q)), q,
                                           RandomFamily::bipartite, 20, 1, 1000 + k, k % 2 == 0});
        OracleOptions pruned;
        pruned.count = true;
        OracleOptions plain = pruned;
        plain.prune = false;
        const auto a = decide_efx_orientation(inst, pruned);
        const auto b = decide_efx_orientation(inst, plain);
        if (a.exists != b.exists || a.count != b.count) ++disagreements;
    }
    return {failures == 0 && disagreements == 0, "100 allocation checks, " + std::to_string(failures) +
                                                     " failures; 50 prune comparisons, " +
                                                     std::to_string(disagreements) + " disagreements"};
}

Outcome c12() {
    return {singleton.checked > 0 && singleton.failures == 0,
            std::to_string(singleton.checked) + " partial EFX orientations, " + std::to_string(singleton.failures) +
                " failures"};
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> known;
    for (int k = 1; k < argc; ++k) {
        const std::string arg = argv[k];
        if (arg == "--known-failure" && k + 1 < argc) {
            known.insert(std::atoi(argv[++k]));
        } else {
            std::cerr << "usage: acceptance [--known-failure N]...\n";
            return 2;
        }
    }

    const auto suite = bipartite_suite();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"orientation counter-example on a 4-cycle", c1},
        {"path counter-examples with high multiplicity", c2},
        {"three-agent building block", c3},
        {"six-agent path counter-example", c4},
        {"partition gadget", c5},
        {"worked example stage by stage", c6},
        {"bipartite pipeline properties", [&] { return c7(suite); }},
        {"half-EFX orientation", [&] { return c8(suite); }},
        {"cut configurations", c9},
        {"special solvers", c10},
        {"oracle cross-check", c11},
        {"envied-singleton property", c12},
    };

    int unexpected = 0;
    int passed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const int id = static_cast<int>(k + 1);
        Outcome out;
        try {
            out = criteria[k].second();
        } catch (const std::exception& ex) {
            out = {false, std::string("threw: ") + ex.what()};
        }
        const bool is_known = known.count(id) != 0;
        passed += out.pass ? 1 : 0;
        if (out.pass == is_known) ++unexpected;
        std::cout << (out.pass ? "PASS" : "FAIL") << (is_known && !out.pass ? " (known)" : "") << "  [" << id << "] "
                  << criteria[k].first << ": " << out.detail << std::endl;
    }
    std::cout << passed << "/" << criteria.size() << " criteria passed";
    if (!known.empty()) std::cout << "; known failures listed: " << known.size();
    std::cout << std::endl;
    return unexpected == 0 ? 0 : 1;
}
