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

// Solvers for skeletons with extra structure: multi-stars (any q),
// multi-trees of diameter at most 4 with q <= 2, and multi-cycles.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "efx/cut.hpp"
#include "efx/errors.hpp"
#include "efx/fairness.hpp"
#include "efx/pipeline.hpp"
#include "efx/structure.hpp"

namespace efx {

/// Instance on the same agents keeping only some edges, with the map back.
struct SubInstance {
    Instance instance;
    std::vector<EdgeId> to_parent;

    /// Copies the owners of `x` (over the sub-instance) into `into`.
    void lift(const Allocation& x, Allocation& into) const {
        for (EdgeId e = 0; e < to_parent.size(); ++e) {
            if (x.allocated(e)) into.assign(to_parent[e], x.owner(e));
        }
    }
};

inline SubInstance keep_edges(const Instance& inst, const std::function<bool(EdgeId)>& keep) {
    std::vector<EdgeItem> edges;
    std::vector<EdgeId> map;
    for (EdgeId e = 0; e < inst.items(); ++e) {
        if (!keep(e)) continue;
        edges.push_back(inst.edge(e));
        map.push_back(e);
    }
    return SubInstance{Instance(inst.agents(), std::move(edges)), std::move(map)};
}

namespace detail {

inline Agent component_center(const Instance& inst, const std::vector<Agent>& comp) {
    Agent best = comp.front();
    std::size_t best_ecc = kNoAgent;
    for (Agent a : comp) {
        const auto dist = skeleton_distances(inst, a);
        std::size_t ecc = 0;
        for (Agent b : comp) ecc = std::max(ecc, dist[b]);
        if (ecc < best_ecc) {
            best = a;
            best_ecc = ecc;
        }
    }
    return best;
}

inline std::vector<const std::vector<Agent>*> nontrivial(const std::vector<std::vector<Agent>>& comps) {
    std::vector<const std::vector<Agent>*> out;
    for (const auto& comp : comps) {
        if (comp.size() > 1) out.push_back(&comp);
    }
    return out;
}

// Highest-valued item for `agent` in `items`, lowest id on ties.
inline EdgeId favourite(const Instance& inst, Agent agent, const Bundle& items) {
    EdgeId best = items.front();
    for (EdgeId e : items) {
        if (inst.value(agent, e) > inst.value(agent, best)) best = e;
    }
    return best;
}

}  // namespace detail

/// Hub cuts each E(leaf, hub); the leaf chooses first.
inline Allocation solve_multistar(const Instance& inst) {
    Allocation x = empty_allocation(inst);
    const auto comps = components(inst);
    for (const auto* comp : detail::nontrivial(comps)) {
        if (!detail::is_star_component(inst, *comp)) throw StructureError("skeleton is not a star");
        const Agent hub = detail::component_center(inst, *comp);
        for (Agent leaf : inst.neighbors(hub)) {
            const CutConfig config = cut(inst, hub, leaf);
            const Bundle& mine = preferred_bundle(inst, config, leaf);
            x.assign(mine, leaf);
            x.assign(other_bundle(config, mine), hub);
        }
    }
    return x;
}

/// One induction step of the tree solver, for observers.
struct TreeStep {
    Agent vertex = 0;  // the center for the base step, else the depth-1 vertex processed
    int rule = 0;      // 0 base, 1 non-envied, 2 envied and content, 3 envied and takes f_i
    Allocation state;
};

using TreeStepHook = std::function<void(const TreeStep&)>;

namespace detail {

// Properties (1) and (2) for every envied depth-1 agent around `center`.
inline void check_tree_invariants(const Instance& inst, const Allocation& x, Agent center) {
    if (!x.is_orientation(inst) || !check_efx(inst, x).pass) {
        throw InvariantViolation("tree step left a non-EFX orientation");
    }
    for (Agent i : inst.neighbors(center)) {
        if (!is_envied(inst, x, i)) continue;
        const Bundle& up = inst.edges_between(center, i);
        const bool to_i = std::all_of(up.begin(), up.end(), [&](EdgeId e) { return x.owner(e) == i; });
        const bool to_c = std::all_of(up.begin(), up.end(), [&](EdgeId e) { return x.owner(e) == center; });
        if (!to_i && !to_c) throw InvariantViolation("E(c, i) split for an envied depth-1 agent");
        if (envies(inst, x, i, center)) throw InvariantViolation("envied depth-1 agent envies the center");
    }
}

}  // namespace detail

/// EFX orientation for multi-trees with diameter <= 4 and q <= 2.
inline Allocation solve_multitree_d4_q2(const Instance& inst, const TreeStepHook& hook = {}) {
    const auto report = analyze_structure(inst);
    if (report.family != Family::multi_tree && report.family != Family::multi_star) {
        throw StructureError("skeleton is not a tree");
    }
    if (report.diameter > 4) throw StructureError("tree diameter exceeds 4");
    if (report.q > 2) throw StructureError("tree multiplicity exceeds 2");

    Allocation x = empty_allocation(inst);
    const auto comps = components(inst);
    for (const auto* comp : detail::nontrivial(comps)) {
        const Agent c = detail::component_center(inst, *comp);

        // Base: c keeps its favourite incident item, the rest goes down.
        const Bundle& around = inst.incident(c);
        Bundle sorted_around(around.begin(), around.end());
        std::sort(sorted_around.begin(), sorted_around.end());
        const EdgeId top = detail::favourite(inst, c, sorted_around);
        for (EdgeId e : sorted_around) x.assign(e, e == top ? c : inst.edge(e).other(c));
        detail::check_tree_invariants(inst, x, c);
        if (hook) hook(TreeStep{c, 0, x});

        for (Agent i : inst.neighbors(c)) {
            std::vector<Agent> children;
            Bundle below;
            for (Agent j : inst.neighbors(i)) {
                if (j == c) continue;
                children.push_back(j);
                below = bundle_union(below, inst.edges_between(i, j));
            }
            if (children.empty()) continue;

            int rule = 0;
            if (!is_envied(inst, x, i)) {
                rule = 1;
                for (Agent j : children) {
                    const Bundle& pair = inst.edges_between(i, j);
                    const EdgeId pick = detail::favourite(inst, j, pair);
                    for (EdgeId e : pair) x.assign(e, e == pick ? j : i);
                }
            } else {
                const Bundle& up = inst.edges_between(c, i);
                const EdgeId f = detail::favourite(inst, i, below);
                if (inst.value(i, up) >= inst.value(i, f)) {
                    rule = 2;
                    for (Agent j : children) x.assign(inst.edges_between(i, j), j);
                } else {
                    rule = 3;
                    const auto c_enviers = enviers_of(inst, x, c);
                    for (Agent j : children) {
                        for (EdgeId e : inst.edges_between(i, j)) x.assign(e, e == f ? i : j);
                    }
                    x.assign(up, c);
                    if (!c_enviers.empty()) {
                        if (c_enviers.size() != 1) throw InvariantViolation("center envied by several agents");
                        const Agent h = c_enviers.front();
                        for (EdgeId e : inst.edges_between(c, h)) x.assign(e, x.owner(e) == c ? h : c);
                    }
                }
            }
            detail::check_tree_invariants(inst, x, c);
            if (hook) hook(TreeStep{i, rule, x});
        }
    }
    return x;
}

/// Which branch of the odd-cycle construction produced an allocation.
enum class CycleCase { even, split_pair, c211, c212, c221, c222, c231, c232 };

inline std::string_view to_string(CycleCase c) {
    switch (c) {
        case CycleCase::even: return "even";
        case CycleCase::split_pair: return "1";
        case CycleCase::c211: return "2.1.1";
        case CycleCase::c212: return "2.1.2";
        case CycleCase::c221: return "2.2.1";
        case CycleCase::c222: return "2.2.2";
        case CycleCase::c231: return "2.3.1";
        case CycleCase::c232: return "2.3.2";
    }
    return "even";
}

namespace detail {

// Agents of a cycle component in walking order: lowest id, then its lower
// neighbour, and onwards.
inline std::vector<Agent> cycle_walk(const Instance& inst, const std::vector<Agent>& comp) {
    std::vector<Agent> walk{comp.front()};
    Agent prev = comp.front();
    Agent cur = inst.neighbors(prev).front();
    while (cur != comp.front()) {
        walk.push_back(cur);
        const auto& nb = inst.neighbors(cur);
        const Agent next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
    }
    return walk;
}

// Canonical colouring flipped per component so `anchor`'s component puts it in T.
inline Bipartition with_in_t(const Instance& inst, Agent anchor, const std::vector<Agent>& force_s) {
    const Bipartition canonical = require_bipartite(inst);
    std::vector<bool> in_t(inst.agents());
    for (Agent a = 0; a < inst.agents(); ++a) in_t[a] = canonical.in_t(a);
    for (const auto& comp : components(inst)) {
        if (!std::binary_search(comp.begin(), comp.end(), anchor)) continue;
        const bool flip = !canonical.in_t(anchor);
        for (Agent a : comp) in_t[a] = canonical.in_t(a) != flip;
    }
    for (Agent a : force_s) in_t[a] = false;
    return Bipartition(std::move(in_t));
}

// A two-bundle split where `first` weakly prefers bundle a, `second` weakly
// prefers bundle b, and not both are indifferent.
struct Split {
    Bundle a;
    Bundle b;
};

inline std::optional<Split> diverging(const Instance& inst, const CutConfig& config, Agent first, Agent second) {
    for (int flip = 0; flip < 2; ++flip) {
        const Bundle& a = flip == 0 ? config.c1 : config.c2;
        const Bundle& b = flip == 0 ? config.c2 : config.c1;
        const Rational fa = inst.value(first, a);
        const Rational fb = inst.value(first, b);
        const Rational sa = inst.value(second, a);
        const Rational sb = inst.value(second, b);
        if (fa >= fb && sb >= sa && !(fa == fb && sa == sb)) return Split{a, b};
    }
    return std::nullopt;
}

// Labels a cut so both endpoints weakly prefer the first bundle.
inline std::pair<Bundle, Bundle> aligned(const Instance& inst, const CutConfig& config) {
    const Bundle& one = preferred_bundle(inst, config, config.cutter);
    const Bundle& two = other_bundle(config, one);
    if (inst.value(config.other, one) >= inst.value(config.other, two)) return {one, two};
    if (inst.value(config.cutter, one) == inst.value(config.cutter, two)) return {two, one};
    throw InvariantViolation("cut preferences diverge outside the split-pair case");
}

}  // namespace detail

/// EFX allocation for a multi-cycle (even length, or odd length >= 5).
inline Allocation solve_multicycle(const Instance& inst, CycleCase* branch = nullptr) {
    const auto comps = components(inst);
    const auto big = detail::nontrivial(comps);
    if (big.size() != 1 || !detail::is_cycle_component(inst, *big.front())) {
        throw StructureError("skeleton is not a cycle");
    }
    const auto& cycle = *big.front();
    auto report = [&](CycleCase c) {
        if (branch != nullptr) *branch = c;
    };
    if (cycle.size() % 2 == 0) {
        report(CycleCase::even);
        return complete_efx(inst);
    }
    if (cycle.size() == 3) throw StructureError("odd 3-cycle unsupported; use oracle");

    Allocation x = empty_allocation(inst);

    // Case 1: some pair disagrees on a cut of their shared edges.
    for (const auto& [pair, shared] : inst.pairs()) {
        const auto [a, b] = pair;
        for (const auto& [i, j] : {std::pair{a, b}, std::pair{b, a}}) {
            const auto split = detail::diverging(inst, cut(inst, i, j), i, j);
            if (!split) continue;
            const auto sub = keep_edges(inst, [&](EdgeId e) {
                const auto& item = inst.edge(e);
                return !(item.incident(a) && item.incident(b));
            });
            sub.lift(complete_efx(sub.instance, detail::with_in_t(sub.instance, i, {})), x);
            x.assign(split->a, i);
            x.assign(split->b, j);
            report(CycleCase::split_pair);
            return x;
        }
    }

    // Case 2: consecutive j', j, i, i' from the lowest id; drop j and i.
    const auto walk = detail::cycle_walk(inst, cycle);
    const Agent jp = walk[0];
    const Agent j = walk[1];
    const Agent i = walk[2];
    const Agent ip = walk[3];
    const auto sub = keep_edges(inst, [&](EdgeId e) {
        const auto& item = inst.edge(e);
        return !item.incident(i) && !item.incident(j);
    });
    sub.lift(complete_efx(sub.instance, detail::with_in_t(sub.instance, jp, {i, j})), x);

    const auto [c1, c2] = detail::aligned(inst, cut(inst, jp, j));
    const auto [d1, d2] = detail::aligned(inst, cut(inst, i, j));
    const auto [e1, e2] = detail::aligned(inst, cut(inst, ip, i));
    const Bundle c2d2 = bundle_union(c2, d2);
    const Rational vj_c2d2 = inst.value(j, c2d2);
    const Rational vj_c1 = inst.value(j, c1);
    const Rational vj_d1 = inst.value(j, d1);

    auto give_i_side = [&](CycleCase keep, CycleCase swap) {
        const Bundle d1e2 = bundle_union(d1, e2);
        if (inst.value(i, d1e2) >= inst.value(i, e1)) {
            x.assign(d1e2, i);
            x.assign(e1, ip);
            report(keep);
        } else {
            x.assign(e1, i);
            x.assign(d1e2, ip);
            report(swap);
        }
    };

    if (vj_c2d2 >= max(vj_c1, vj_d1)) {
        x.assign(c1, jp);
        x.assign(c2d2, j);
        give_i_side(CycleCase::c211, CycleCase::c212);
    } else if (vj_c1 >= max(vj_c2d2, vj_d1)) {
        x.assign(c2d2, jp);
        x.assign(c1, j);
        give_i_side(CycleCase::c221, CycleCase::c222);
    } else {
        x.assign(c1, jp);
        x.assign(d1, j);
        const Bundle d2e2 = bundle_union(d2, e2);
        if (inst.value(i, d2e2) >= inst.value(i, e1)) {
            x.assign(d2e2, i);
            x.assign(bundle_union(c2, e1), ip);
            report(CycleCase::c231);
        } else {
            x.assign(e1, i);
            x.assign(bundle_union(c2d2, e2), ip);
            report(CycleCase::c232);
        }
    }
    return x;
}

}  // namespace efx
