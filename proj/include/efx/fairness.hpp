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

// Envy and (alpha-)EFX verification. Envy is strict: exact ties
// never count as envy.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "efx/errors.hpp"
#include "efx/instance.hpp"

namespace efx {

struct Witness {
    Agent envier = 0;
    Agent envied = 0;
    std::optional<EdgeId> removed_edge;
    Rational lhs;  // what the envier holds
    Rational rhs;  // what the envier sees in the other bundle (after removal, scaled by alpha)
};

struct Verdict {
    bool pass = true;
    std::vector<Witness> witnesses;
};

inline Rational bundle_value(const Instance& inst, Agent agent, const Bundle& bundle) {
    return inst.value(agent, bundle);
}

inline bool envies(const Instance& inst, const Allocation& x, Agent i, Agent j) {
    if (i == j) return false;
    return inst.value(i, x.bundle(j)) > inst.value(i, x.bundle(i));
}

namespace detail {

// Cheapest item of `bundle` for `agent`, lowest id on ties. Bundle must be nonempty.
inline EdgeId cheapest_item(const Instance& inst, Agent agent, const Bundle& bundle) {
    EdgeId best = bundle.front();
    for (EdgeId e : bundle) {
        if (inst.value(agent, e) < inst.value(agent, best)) best = e;
    }
    return best;
}

inline std::optional<Witness> efx_violation(const Instance& inst, const Bundle& own, const Bundle& other,
                                            Agent i, Agent j, const Rational& alpha) {
    if (other.empty()) return std::nullopt;
    const EdgeId g = cheapest_item(inst, i, other);
    Rational lhs = inst.value(i, own);
    Rational rhs = alpha * (inst.value(i, other) - inst.value(i, g));
    if (lhs < rhs) return Witness{i, j, g, std::move(lhs), std::move(rhs)};
    return std::nullopt;
}

}  // namespace detail

/// Returns the witness g (cheapest item of X_j for i) when i strongly envies j.
inline std::optional<Witness> strongly_envies(const Instance& inst, const Allocation& x, Agent i, Agent j) {
    if (i == j) return std::nullopt;
    return detail::efx_violation(inst, x.bundle(i), x.bundle(j), i, j, Rational(1));
}

enum class PairScope {
    automatic,  // adjacent pairs only when the allocation is an orientation
    all_pairs,
};

/// alpha-EFX check; one witness per violating ordered pair, pairs in (envier, envied) order.
inline Verdict check_efx(const Instance& inst, const Allocation& x, const Rational& alpha = Rational(1),
                         PairScope scope = PairScope::automatic) {
    if (!alpha.is_positive() || alpha > Rational(1)) {
        throw PreconditionError("alpha must lie in (0, 1]");
    }
    const auto bundles = x.bundles();
    const bool adjacent_only = scope == PairScope::automatic && x.is_orientation(inst);
    Verdict verdict;
    for (Agent i = 0; i < inst.agents(); ++i) {
        auto check = [&](Agent j) {
            if (auto w = detail::efx_violation(inst, bundles[i], bundles[j], i, j, alpha)) {
                verdict.witnesses.push_back(std::move(*w));
            }
        };
        if (adjacent_only) {
            for (Agent j : inst.neighbors(i)) check(j);
        } else {
            for (Agent j = 0; j < inst.agents(); ++j) {
                if (j != i) check(j);
            }
        }
    }
    verdict.pass = verdict.witnesses.empty();
    return verdict;
}

/// The largest alpha in (0, 1] for which `agent` is alpha-EFX towards everyone.
inline Rational achieved_alpha(const Instance& inst, const Allocation& x, Agent agent) {
    const auto bundles = x.bundles();
    const Rational own = inst.value(agent, bundles[agent]);
    Rational alpha(1);
    for (Agent j = 0; j < inst.agents(); ++j) {
        if (j == agent || bundles[j].empty()) continue;
        const EdgeId g = detail::cheapest_item(inst, agent, bundles[j]);
        const Rational seen = inst.value(agent, bundles[j]) - inst.value(agent, g);
        if (seen.is_positive() && own < seen * alpha) alpha = own / seen;
    }
    return alpha;
}

/// Literal EFX-feasibility of bundle k in `partition` under the agent's valuation.
inline bool is_efx_feasible(const Instance& inst, Agent agent, const std::vector<Bundle>& partition,
                            std::size_t k) {
    if (k >= partition.size()) throw PreconditionError("bundle index out of range");
    const Rational own = inst.value(agent, partition[k]);
    for (const auto& other : partition) {
        if (other.empty()) continue;
        const EdgeId g = detail::cheapest_item(inst, agent, other);
        if (own < inst.value(agent, other) - inst.value(agent, g)) return false;
    }
    return true;
}

/// Agents envied by at least one other agent, ascending.
inline std::vector<Agent> envied_set(const Instance& inst, const Allocation& x) {
    const auto bundles = x.bundles();
    std::vector<Agent> out;
    for (Agent i = 0; i < inst.agents(); ++i) {
        if (bundles[i].empty()) continue;
        for (Agent j = 0; j < inst.agents(); ++j) {
            if (j != i && inst.value(j, bundles[i]) > inst.value(j, bundles[j])) {
                out.push_back(i);
                break;
            }
        }
    }
    return out;
}

inline bool is_envied(const Instance& inst, const Allocation& x, Agent i) {
    for (Agent j = 0; j < inst.agents(); ++j) {
        if (envies(inst, x, j, i)) return true;
    }
    return false;
}

/// Agents that envy `i`, ascending.
inline std::vector<Agent> enviers_of(const Instance& inst, const Allocation& x, Agent i) {
    std::vector<Agent> out;
    for (Agent j = 0; j < inst.agents(); ++j) {
        if (envies(inst, x, j, i)) out.push_back(j);
    }
    return out;
}

/// On a partial EFX orientation every envied agent i has a single envier j
/// and X_i is contained in E(i, j). A failure is reported as the strong envy
/// it implies, naming an edge of X_i outside E(i, j).
inline Verdict check_envied_singleton(const Instance& inst, const Allocation& x) {
    if (!x.is_orientation(inst) || !check_efx(inst, x).pass) {
        throw PreconditionError("envied-singleton check requires a partial EFX orientation");
    }
    const auto bundles = x.bundles();
    Verdict verdict;
    for (Agent i : envied_set(inst, x)) {
        for (Agent j : enviers_of(inst, x, i)) {
            for (EdgeId e : bundles[i]) {
                if (inst.edge(e).incident(j)) continue;
                verdict.witnesses.push_back(Witness{j, i, e, inst.value(j, bundles[j]),
                                                    inst.value(j, bundles[i])});
                break;
            }
        }
    }
    verdict.pass = verdict.witnesses.empty();
    return verdict;
}

}  // namespace efx
