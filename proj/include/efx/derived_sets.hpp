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

// State-dependent availability sets for a partial allocation on a bipartite
// multi-graph. Everything is recomputed from (instance, allocation); there is
// no cached state.
//
// For adjacent i, j with T-side cutter t and t-cut (C1, C2):
//
//   E(i,j) untouched              A_ij = argmax_i {C1, C2}   A_ji = argmax_j {C1, C2}
//   only j holds items of E(i,j)  A_ij = E(i,j) \ X_j        A_ji = {}
//   only i holds items of E(i,j)  A_ij = {}                  A_ji = E(i,j) \ X_i
//   anything else                 A_ij = A_ji = {}

#include <algorithm>
#include <optional>
#include <vector>

#include "efx/cut.hpp"
#include "efx/errors.hpp"
#include "efx/fairness.hpp"
#include "efx/structure.hpp"

namespace efx {

/// The configuration E(i, j) is placed by: always cut by its T-side endpoint.
inline CutConfig t_cut(const Instance& inst, Agent i, Agent j, const Bipartition& bip) {
    const Agent t = bip.in_t(i) ? i : j;
    return cut(inst, t, t == i ? j : i);
}

/// A_{i,j}(X).
inline Bundle available(const Instance& inst, const Allocation& x, Agent i, Agent j, const Bipartition& bip) {
    if (i == j || !inst.adjacent(i, j)) return {};
    const Bundle& pair = inst.edges_between(i, j);
    bool i_holds = false;
    bool j_holds = false;
    bool third_holds = false;
    for (EdgeId e : pair) {
        const Agent owner = x.owner(e);
        if (owner == kNoAgent) continue;
        if (owner == i) {
            i_holds = true;
        } else if (owner == j) {
            j_holds = true;
        } else {
            third_holds = true;
        }
    }
    if (third_holds) return {};
    if (!i_holds && !j_holds) {
        if (bip.in_t(i) == bip.in_t(j)) {
            throw PreconditionError("available() needs i and j on opposite sides of the bipartition");
        }
        return preferred_bundle(inst, t_cut(inst, i, j, bip), i);
    }
    if (j_holds && !i_holds) {
        Bundle out;
        for (EdgeId e : pair) {
            if (x.owner(e) != j) out.push_back(e);
        }
        return out;
    }
    return {};
}

/// A_i(X): union of A_{i,j}(X) over all j.
inline Bundle available_set(const Instance& inst, const Allocation& x, Agent i, const Bipartition& bip) {
    Bundle out;
    for (Agent j : inst.neighbors(i)) out = bundle_union(out, available(inst, x, i, j, bip));
    return out;
}

/// B_i(X): the available bundles A_{i,j}(X), one per neighbour j (ascending).
inline std::vector<Bundle> available_bundles(const Instance& inst, const Allocation& x, Agent i,
                                             const Bipartition& bip) {
    std::vector<Bundle> out;
    for (Agent j : inst.neighbors(i)) out.push_back(available(inst, x, i, j, bip));
    return out;
}

/// U_i(X): unallocated edges incident to i.
inline Bundle unallocated_incident(const Instance& inst, const Allocation& x, Agent i) {
    Bundle out;
    for (EdgeId e : inst.incident(i)) {
        if (!x.allocated(e)) out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// S_i(X): non-envied k with v_i(X_i) >= v_i(X_k u A_i(X)). Requires i envied.
inline std::vector<Agent> safe_set(const Instance& inst, const Allocation& x, Agent i, const Bipartition& bip) {
    const auto envied = envied_set(inst, x);
    if (!std::binary_search(envied.begin(), envied.end(), i)) {
        throw PreconditionError("safe set is only defined for envied agents");
    }
    const Rational own = inst.value(i, x.bundle(i));
    const Rational extra = inst.value(i, available_set(inst, x, i, bip));
    std::vector<Agent> out;
    for (Agent k = 0; k < inst.agents(); ++k) {
        if (std::binary_search(envied.begin(), envied.end(), k)) continue;
        if (own >= inst.value(i, x.bundle(k)) + extra) out.push_back(k);
    }
    return out;
}

/// Snapshot of every derived set for one state.
struct DerivedState {
    std::vector<Bundle> available;           // A_i
    std::vector<Bundle> unallocated;         // U_i
    std::vector<std::vector<Bundle>> bundles;  // B_i, aligned with inst.neighbors(i)
    std::vector<std::optional<std::vector<Agent>>> safe;  // S_i for envied i
};

inline DerivedState derive(const Instance& inst, const Allocation& x, const Bipartition& bip) {
    DerivedState state;
    const auto envied = envied_set(inst, x);
    for (Agent i = 0; i < inst.agents(); ++i) {
        state.available.push_back(available_set(inst, x, i, bip));
        state.unallocated.push_back(unallocated_incident(inst, x, i));
        state.bundles.push_back(available_bundles(inst, x, i, bip));
        if (std::binary_search(envied.begin(), envied.end(), i)) {
            state.safe.emplace_back(safe_set(inst, x, i, bip));
        } else {
            state.safe.emplace_back(std::nullopt);
        }
    }
    return state;
}

}  // namespace efx
