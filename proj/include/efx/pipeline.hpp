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

#pragma once

// Complete EFX allocations on bipartite multi-graphs.
//
// Three stages build a partial EFX orientation X with five properties:
//   P1  X is an EFX orientation
//   P2  every E(i, j) is placed as whole bundles of its T-side cut
//   P3  v_i(X_i) >= v_i(B) for every available bundle B of i
//   P4  non-envied agents have nothing available
//   P5  every envied agent's envier is in its safe set
// after which the leftover edges are handed to the unique envier of their
// envied endpoint (wasteful but EFX), or to the non-envied endpoint for the
// 1/2-EFX orientation.
//
// Every "pick some agent" step scans agent ids in ascending order.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "efx/cut.hpp"
#include "efx/derived_sets.hpp"
#include "efx/errors.hpp"
#include "efx/fairness.hpp"
#include "efx/structure.hpp"

namespace efx {

struct PropertyFlags {
    bool p1 = false;
    bool p2 = false;
    bool p3 = false;
    bool p4 = false;
    bool p5 = false;

    friend bool operator==(const PropertyFlags&, const PropertyFlags&) = default;
};

struct TraceEvent {
    std::string stage;   // greedy | saturate | safe-set | completion | leftover
    std::string action;  // pick | case-1 | case-2 | case-3 | swap | absorb | resaturate | give
    Agent agent = 0;
    std::optional<Agent> other;
    Bundle edges;
};

struct Snapshot {
    std::string stage;
    Allocation allocation;
    PropertyFlags flags;
    std::vector<Agent> envied;
};

struct PipelineTrace {
    std::vector<Snapshot> snapshots;
    std::vector<TraceEvent> events;
    std::vector<std::size_t> envied_counts;  // before the first and after every safe-set iteration
};

namespace detail {

inline void log(PipelineTrace* trace, std::string stage, std::string action, Agent agent,
                std::optional<Agent> other, Bundle edges) {
    if (trace != nullptr) {
        trace->events.push_back(TraceEvent{std::move(stage), std::move(action), agent, other, std::move(edges)});
    }
}

inline bool contains(const std::vector<Agent>& sorted, Agent a) {
    return std::binary_search(sorted.begin(), sorted.end(), a);
}

inline void require_bipartition(const Instance& inst, const Bipartition& bip) {
    if (!bip.valid_for(inst)) throw StructureError("bipartition does not two-colour the skeleton");
}

// P2 for one pair: allocated parts of E(s, t) are whole bundles of the t-cut.
inline bool placed_by_cut(const Instance& inst, const Allocation& x, Agent s, Agent t, const Bipartition& bip) {
    const CutConfig config = t_cut(inst, s, t, bip);
    Bundle held_s;
    Bundle held_t;
    Bundle free;
    for (EdgeId e : inst.edges_between(s, t)) {
        const Agent owner = x.owner(e);
        if (owner == s) {
            held_s.push_back(e);
        } else if (owner == t) {
            held_t.push_back(e);
        } else if (owner == kNoAgent) {
            free.push_back(e);
        } else {
            return false;
        }
    }
    if (held_s.empty() && held_t.empty()) return true;
    for (const auto* first : {&config.c1, &config.c2}) {
        const Bundle& second = first == &config.c1 ? config.c2 : config.c1;
        const bool split = (held_s == *first && held_t == second);
        const bool s_only = (held_s == *first && held_t.empty() && free == second);
        const bool t_only = (held_t == *first && held_s.empty() && free == second);
        if (split || s_only || t_only) return true;
    }
    return false;
}

}  // namespace detail

inline PropertyFlags check_properties(const Instance& inst, const Allocation& x, const Bipartition& bip) {
    detail::require_bipartition(inst, bip);
    PropertyFlags flags;
    flags.p1 = x.is_orientation(inst) && check_efx(inst, x).pass;

    flags.p2 = true;
    for (const auto& [pair, list] : inst.pairs()) {
        const Agent s = bip.in_s(pair.first) ? pair.first : pair.second;
        const Agent t = s == pair.first ? pair.second : pair.first;
        if (!detail::placed_by_cut(inst, x, s, t, bip)) {
            flags.p2 = false;
            break;
        }
    }

    const auto bundles = x.bundles();
    const auto envied = envied_set(inst, x);
    flags.p3 = true;
    flags.p4 = true;
    flags.p5 = true;
    for (Agent i = 0; i < inst.agents(); ++i) {
        const Rational own = inst.value(i, bundles[i]);
        for (const auto& b : available_bundles(inst, x, i, bip)) {
            if (inst.value(i, b) > own) flags.p3 = false;
        }
        if (!detail::contains(envied, i)) {
            if (!available_set(inst, x, i, bip).empty()) flags.p4 = false;
        } else {
            const auto safe = safe_set(inst, x, i, bip);
            for (Agent j : enviers_of(inst, x, i)) {
                if (!detail::contains(safe, j)) flags.p5 = false;
            }
        }
    }
    return flags;
}

/// Every envied agent lies on the S side.
inline bool envied_within_s(const Instance& inst, const Allocation& x, const Bipartition& bip) {
    const auto envied = envied_set(inst, x);
    return std::all_of(envied.begin(), envied.end(), [&](Agent a) { return bip.in_s(a); });
}

/// Each unallocated edge lies in some E(i, j) with i envied, j non-envied and
/// E(i, j) \ A_{i,j}(X) held by j.
inline bool leftovers_between_envied_and_free(const Instance& inst, const Allocation& x, const Bipartition& bip) {
    const auto envied = envied_set(inst, x);
    for (EdgeId e : x.unallocated()) {
        const auto& item = inst.edge(e);
        bool ok = false;
        for (auto [i, j] : {std::pair{item.u, item.v}, std::pair{item.v, item.u}}) {
            if (!detail::contains(envied, i) || detail::contains(envied, j)) continue;
            const Bundle rest = bundle_difference(inst.edges_between(i, j), available(inst, x, i, j, bip));
            if (std::all_of(rest.begin(), rest.end(), [&](EdgeId f) { return x.owner(f) == j; })) ok = true;
        }
        if (!ok) return false;
    }
    return true;
}

/// Non-envied agents have A_i(X) empty and value their unallocated incident
/// edges no more than their own bundle.
inline bool non_envied_satisfied(const Instance& inst, const Allocation& x, const Bipartition& bip) {
    const auto envied = envied_set(inst, x);
    for (Agent i = 0; i < inst.agents(); ++i) {
        if (detail::contains(envied, i)) continue;
        if (!available_set(inst, x, i, bip).empty()) return false;
        if (inst.value(i, unallocated_incident(inst, x, i)) > inst.value(i, x.bundle(i))) return false;
    }
    return true;
}

/// Stage 1: S agents ascending, then T agents ascending, each takes its most
/// valuable available bundle (lowest neighbour id on ties; nothing if worthless).
inline Allocation greedy_orientation(const Instance& inst, const Bipartition& bip, PipelineTrace* trace = nullptr) {
    detail::require_bipartition(inst, bip);
    Allocation x = empty_allocation(inst);
    std::vector<Agent> order = bip.s_side();
    const auto t_side = bip.t_side();
    order.insert(order.end(), t_side.begin(), t_side.end());
    for (Agent a : order) {
        Bundle best;
        Rational best_value;
        std::optional<Agent> from;
        for (Agent k : inst.neighbors(a)) {
            Bundle candidate = available(inst, x, a, k, bip);
            Rational worth = inst.value(a, candidate);
            if (worth > best_value) {
                best = std::move(candidate);
                best_value = std::move(worth);
                from = k;
            }
        }
        if (from) {
            x.assign(best, a);
            detail::log(trace, "greedy", "pick", a, from, best);
        }
    }
    return x;
}

/// Stage 2: hand available edges to non-envied agents until none has any.
inline Allocation saturate_non_envied(const Instance& inst, Allocation x, const Bipartition& bip,
                                      PipelineTrace* trace = nullptr) {
    const PropertyFlags in = check_properties(inst, x, bip);
    if (!in.p1 || !in.p2 || !in.p3) throw PreconditionError("saturate_non_envied requires P1-P3");

    const std::size_t max_steps = inst.items() + 1;
    std::size_t steps = 0;
    while (true) {
        const auto envied = envied_set(inst, x);
        std::optional<Agent> violator;
        for (Agent i = 0; i < inst.agents() && !violator; ++i) {
            if (!detail::contains(envied, i) && !available_set(inst, x, i, bip).empty()) violator = i;
        }
        if (!violator) break;
        const Agent i = *violator;
        while (true) {
            std::optional<Agent> partner;
            Bundle avail;
            for (Agent j : inst.neighbors(i)) {
                avail = available(inst, x, i, j, bip);
                if (!avail.empty()) {
                    partner = j;
                    break;
                }
            }
            if (!partner) break;
            if (++steps > max_steps) throw InvariantViolation("saturate_non_envied did not terminate");
            const Agent j = *partner;
            const Bundle& pair = inst.edges_between(i, j);
            const bool j_holds = std::any_of(pair.begin(), pair.end(), [&](EdgeId e) { return x.owner(e) == j; });
            if (j_holds) {
                x.assign(avail, i);
                detail::log(trace, "saturate", "case-1", i, j, avail);
            } else if (!is_envied(inst, x, j)) {
                // The S-side endpoint chooses from the T-side cut.
                const Agent s = bip.in_s(i) ? i : j;
                const CutConfig config = t_cut(inst, i, j, bip);
                const Bundle& chosen = preferred_bundle(inst, config, s);
                const Bundle& rest = other_bundle(config, chosen);
                x.assign(chosen, s);
                x.assign(rest, s == i ? j : i);
                detail::log(trace, "saturate", "case-2", i, j, s == i ? chosen : rest);
            } else {
                if (!bip.in_t(i)) throw InvariantViolation("envied partner on the T side during saturation");
                const CutConfig config = cut(inst, i, j);
                const Bundle& mine = preferred_bundle(inst, config, i);
                x.assign(mine, i);
                detail::log(trace, "saturate", "case-3", i, j, mine);
            }
        }
    }
    return x;
}

/// Stage 3: while an envied i has an envier j outside S_i(X), swap the
/// j-cut bundles of E(i, j) between them and give i everything available.
/// If that leaves another newly non-envied agent with available edges,
/// stage 2 runs again before the next iteration.
inline Allocation enforce_safe_sets(const Instance& inst, Allocation x, const Bipartition& bip,
                                    PipelineTrace* trace = nullptr) {
    const PropertyFlags in = check_properties(inst, x, bip);
    if (!in.p1 || !in.p2 || !in.p3 || !in.p4) throw PreconditionError("enforce_safe_sets requires P1-P4");

    auto envied = envied_set(inst, x);
    if (trace != nullptr) trace->envied_counts.push_back(envied.size());
    while (true) {
        std::optional<std::pair<Agent, Agent>> target;
        for (Agent i : envied) {
            const auto safe = safe_set(inst, x, i, bip);
            for (Agent j : enviers_of(inst, x, i)) {
                if (!detail::contains(safe, j)) {
                    target = std::pair{i, j};
                    break;
                }
            }
            if (target) break;
        }
        if (!target) break;
        const auto [i, j] = *target;
        if (!bip.in_t(j)) throw InvariantViolation("envier outside T during safe-set repair");

        const std::size_t allocated_before = x.items() - x.unallocated().size();
        const CutConfig config = cut(inst, j, i);
        const Bundle held_i = bundle_intersection(x.bundle(i), inst.edges_between(i, j));
        const Bundle held_j = bundle_intersection(x.bundle(j), inst.edges_between(i, j));
        const bool whole = (held_i == config.c1 && held_j == config.c2) ||
                           (held_i == config.c2 && held_j == config.c1);
        if (!whole) throw InvariantViolation("envied pair does not hold complementary cut bundles");
        x.assign(held_i, j);
        x.assign(held_j, i);
        detail::log(trace, "safe-set", "swap", i, j, held_j);
        const Bundle extra = available_set(inst, x, i, bip);
        x.assign(extra, i);
        detail::log(trace, "safe-set", "absorb", i, std::nullopt, extra);

        // The swap can also end j's envy of a second agent, which may then
        // hold available edges; saturating again restores P4.
        auto next = envied_set(inst, x);
        bool p4_broken = false;
        for (Agent a = 0; a < inst.agents() && !p4_broken; ++a) {
            p4_broken = !detail::contains(next, a) && !available_set(inst, x, a, bip).empty();
        }
        if (p4_broken) {
            detail::log(trace, "safe-set", "resaturate", i, j, {});
            x = saturate_non_envied(inst, std::move(x), bip, trace);
            next = envied_set(inst, x);
        }
        if (trace != nullptr) trace->envied_counts.push_back(next.size());
        const bool grew = x.items() - x.unallocated().size() > allocated_before;
        if (!grew && next.size() >= envied.size()) throw InvariantViolation("safe-set iteration did not make progress");
        envied = next;
    }
    return x;
}

namespace detail {

inline void snapshot(PipelineTrace* trace, const std::string& stage, const Instance& inst, const Allocation& x,
                     const Bipartition& bip) {
    if (trace == nullptr) return;
    trace->snapshots.push_back(Snapshot{stage, x, check_properties(inst, x, bip), envied_set(inst, x)});
}

inline Allocation partial_orientation(const Instance& inst, const Bipartition& bip, PipelineTrace* trace) {
    Allocation x = greedy_orientation(inst, bip, trace);
    snapshot(trace, "greedy", inst, x, bip);
    x = saturate_non_envied(inst, std::move(x), bip, trace);
    snapshot(trace, "saturate", inst, x, bip);
    x = enforce_safe_sets(inst, std::move(x), bip, trace);
    snapshot(trace, "safe-set", inst, x, bip);
    return x;
}

// For each unallocated edge: its envied endpoint, and the non-envied one.
inline std::pair<Agent, Agent> leftover_endpoints(const Instance& inst, const std::vector<Agent>& envied, EdgeId e) {
    const auto& item = inst.edge(e);
    const bool u_envied = contains(envied, item.u);
    const bool v_envied = contains(envied, item.v);
    if (u_envied == v_envied) {
        throw InvariantViolation("unallocated edge " + std::to_string(e) +
                                 " is not between an envied and a non-envied agent");
    }
    return u_envied ? std::pair{item.u, item.v} : std::pair{item.v, item.u};
}

}  // namespace detail

/// Allocates the leftovers of a P1-P5 state to the unique envier of their
/// envied endpoint.
inline Allocation complete_leftovers(const Instance& inst, Allocation x, PipelineTrace* trace = nullptr) {
    const Allocation before = x;
    const auto envied = envied_set(inst, before);
    for (EdgeId e : before.unallocated()) {
        const auto [i, j] = detail::leftover_endpoints(inst, envied, e);
        const auto enviers = enviers_of(inst, before, i);
        if (enviers.size() != 1) throw InvariantViolation("envied agent without a unique envier");
        const Agent k = enviers.front();
        if (k == j) throw InvariantViolation("leftover would return to its own endpoint");
        x.assign(e, k);
        detail::log(trace, "completion", "give", k, i, Bundle{e});
    }
    return x;
}

/// Complete (possibly wasteful) EFX allocation for a given bipartition.
inline Allocation complete_efx(const Instance& inst, const Bipartition& bip, PipelineTrace* trace = nullptr) {
    detail::require_bipartition(inst, bip);
    Allocation x = detail::partial_orientation(inst, bip, trace);
    x = complete_leftovers(inst, std::move(x), trace);
    detail::snapshot(trace, "completion", inst, x, bip);
    return x;
}

inline Bipartition require_bipartite(const Instance& inst) {
    auto bip = two_colour(inst);
    if (!bip) throw StructureError("skeleton is not bipartite");
    return *bip;
}

inline Allocation complete_efx(const Instance& inst, PipelineTrace* trace = nullptr) {
    return complete_efx(inst, require_bipartite(inst), trace);
}

/// In every component the smaller side plays S; on equal sizes the side
/// holding the component's lowest agent id does.
inline Bipartition smaller_side_as_s(const Instance& inst) {
    const Bipartition canonical = require_bipartite(inst);
    std::vector<bool> in_t(inst.agents());
    for (const auto& comp : components(inst)) {
        std::size_t s_count = 0;
        for (Agent a : comp) s_count += canonical.in_s(a) ? 1 : 0;
        const bool flip = s_count > comp.size() - s_count;
        for (Agent a : comp) in_t[a] = canonical.in_t(a) != flip;
    }
    return Bipartition(std::move(in_t));
}

/// Complete orientation: T agents EFX, S agents at least 1/2-EFX.
inline Allocation half_efx_orientation(const Instance& inst, PipelineTrace* trace = nullptr) {
    const Bipartition bip = smaller_side_as_s(inst);
    Allocation x = detail::partial_orientation(inst, bip, trace);
    const auto envied = envied_set(inst, x);
    const Allocation before = x;
    for (EdgeId e : before.unallocated()) {
        const auto [i, j] = detail::leftover_endpoints(inst, envied, e);
        x.assign(e, j);
        detail::log(trace, "leftover", "give", j, i, Bundle{e});
    }
    detail::snapshot(trace, "leftover", inst, x, bip);
    return x;
}

}  // namespace efx
