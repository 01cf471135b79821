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

// Multi-graph fair division instances: agents are vertices, items are edges,
// and each item is valued (positively) only by its two endpoints.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "efx/errors.hpp"
#include "efx/rational.hpp"

namespace efx {

using Agent = std::size_t;
using EdgeId = std::size_t;

/// Sorted, duplicate-free list of edge ids.
using Bundle = std::vector<EdgeId>;

inline constexpr Agent kNoAgent = std::numeric_limits<Agent>::max();

struct EdgeItem {
    Agent u = 0;
    Agent v = 0;
    Rational wu;  // value of the item to u
    Rational wv;  // value of the item to v

    [[nodiscard]] bool incident(Agent a) const { return a == u || a == v; }
    [[nodiscard]] Agent other(Agent a) const { return a == u ? v : u; }
};

class Instance {
public:
    Instance() = default;

    /// Validates every edge; errors name the offending edge index.
    Instance(std::size_t n, std::vector<EdgeItem> edges) : n_(n), edges_(std::move(edges)) {
        for (EdgeId e = 0; e < edges_.size(); ++e) {
            const auto& item = edges_[e];
            if (item.u >= n_ || item.v >= n_) {
                throw InputError("agent id out of range at edge " + std::to_string(e));
            }
            if (item.u == item.v) throw InputError("self-loop at edge " + std::to_string(e));
            if (!item.wu.is_positive() || !item.wv.is_positive()) {
                throw InputError("non-positive weight at edge " + std::to_string(e));
            }
        }
        incident_.assign(n_, {});
        neighbors_.assign(n_, {});
        for (EdgeId e = 0; e < edges_.size(); ++e) {
            const auto& item = edges_[e];
            incident_[item.u].push_back(e);
            incident_[item.v].push_back(e);
            auto& list = pair_edges_[key(item.u, item.v)];
            if (list.empty()) {
                neighbors_[item.u].push_back(item.v);
                neighbors_[item.v].push_back(item.u);
            }
            list.push_back(e);
        }
        for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
    }

    [[nodiscard]] std::size_t agents() const { return n_; }
    [[nodiscard]] std::size_t items() const { return edges_.size(); }
    [[nodiscard]] const std::vector<EdgeItem>& edges() const { return edges_; }
    [[nodiscard]] const EdgeItem& edge(EdgeId e) const { return edges_.at(e); }

    /// v_agent(e): the endpoint weight, or zero for non-incident agents.
    [[nodiscard]] const Rational& value(Agent agent, EdgeId e) const {
        const auto& item = edges_[e];
        if (agent == item.u) return item.wu;
        if (agent == item.v) return item.wv;
        return zero_rational();
    }

    [[nodiscard]] Rational value(Agent agent, std::span<const EdgeId> bundle) const {
        Rational total;
        for (EdgeId e : bundle) {
            if (e >= edges_.size()) throw PreconditionError("invalid edge id " + std::to_string(e));
            if (edges_[e].incident(agent)) total += value(agent, e);
        }
        return total;
    }

    /// E(i, j), sorted by edge id; empty when the agents are not adjacent.
    [[nodiscard]] const Bundle& edges_between(Agent i, Agent j) const {
        if (i == j) throw PreconditionError("edge_set requires two distinct agents");
        static const Bundle empty;
        auto it = pair_edges_.find(key(i, j));
        return it == pair_edges_.end() ? empty : it->second;
    }

    [[nodiscard]] const std::vector<EdgeId>& incident(Agent a) const { return incident_.at(a); }
    [[nodiscard]] const std::vector<Agent>& neighbors(Agent a) const { return neighbors_.at(a); }
    [[nodiscard]] bool adjacent(Agent i, Agent j) const {
        return i != j && pair_edges_.contains(key(i, j));
    }
    [[nodiscard]] const std::map<std::pair<Agent, Agent>, Bundle>& pairs() const { return pair_edges_; }

    [[nodiscard]] bool symmetric() const {
        return std::all_of(edges_.begin(), edges_.end(),
                           [](const EdgeItem& item) { return item.wu == item.wv; });
    }

private:
    static std::pair<Agent, Agent> key(Agent i, Agent j) { return i < j ? std::pair{i, j} : std::pair{j, i}; }

    std::size_t n_ = 0;
    std::vector<EdgeItem> edges_;
    std::vector<std::vector<EdgeId>> incident_;
    std::vector<std::vector<Agent>> neighbors_;
    std::map<std::pair<Agent, Agent>, Bundle> pair_edges_;
};

/// Free-function spelling of Instance::edges_between.
inline const Bundle& edge_set(const Instance& inst, Agent i, Agent j) { return inst.edges_between(i, j); }

/// A partial or complete assignment of edges to agents. Stored as an owner
/// per edge, which keeps bundles disjoint by construction.
class Allocation {
public:
    Allocation() = default;
    Allocation(std::size_t agents, std::size_t items) : n_(agents), owner_(items, kNoAgent) {}

    /// Builds from explicit bundles; rejects overlapping or out-of-range ids.
    static Allocation from_bundles(std::size_t items, const std::vector<Bundle>& bundles) {
        Allocation x(bundles.size(), items);
        for (Agent a = 0; a < bundles.size(); ++a) {
            for (EdgeId e : bundles[a]) {
                if (e >= items) throw InputError("edge id " + std::to_string(e) + " out of range");
                if (x.owner_[e] != kNoAgent) {
                    throw InputError("edge " + std::to_string(e) + " assigned to two agents");
                }
                x.owner_[e] = a;
            }
        }
        return x;
    }

    [[nodiscard]] std::size_t agents() const { return n_; }
    [[nodiscard]] std::size_t items() const { return owner_.size(); }
    [[nodiscard]] Agent owner(EdgeId e) const { return owner_.at(e); }
    [[nodiscard]] bool allocated(EdgeId e) const { return owner_.at(e) != kNoAgent; }
    [[nodiscard]] const std::vector<Agent>& owners() const { return owner_; }

    void assign(EdgeId e, Agent a) {
        if (a >= n_) throw PreconditionError("agent " + std::to_string(a) + " out of range");
        owner_.at(e) = a;
    }
    void assign(std::span<const EdgeId> bundle, Agent a) {
        for (EdgeId e : bundle) assign(e, a);
    }
    void release(EdgeId e) { owner_.at(e) = kNoAgent; }

    [[nodiscard]] Bundle bundle(Agent a) const {
        Bundle out;
        for (EdgeId e = 0; e < owner_.size(); ++e) {
            if (owner_[e] == a) out.push_back(e);
        }
        return out;
    }

    [[nodiscard]] std::vector<Bundle> bundles() const {
        std::vector<Bundle> out(n_);
        for (EdgeId e = 0; e < owner_.size(); ++e) {
            if (owner_[e] != kNoAgent) out[owner_[e]].push_back(e);
        }
        return out;
    }

    [[nodiscard]] Bundle unallocated() const {
        Bundle out;
        for (EdgeId e = 0; e < owner_.size(); ++e) {
            if (owner_[e] == kNoAgent) out.push_back(e);
        }
        return out;
    }

    [[nodiscard]] bool complete() const {
        return std::none_of(owner_.begin(), owner_.end(), [](Agent a) { return a == kNoAgent; });
    }

    /// Every allocated edge sits at one of its endpoints.
    [[nodiscard]] bool is_orientation(const Instance& inst) const {
        for (EdgeId e = 0; e < owner_.size(); ++e) {
            if (owner_[e] != kNoAgent && !inst.edge(e).incident(owner_[e])) return false;
        }
        return true;
    }

    friend bool operator==(const Allocation&, const Allocation&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Agent> owner_;
};

inline Allocation empty_allocation(const Instance& inst) { return Allocation(inst.agents(), inst.items()); }

/// Bundle helpers over sorted edge-id vectors.
inline Bundle bundle_union(const Bundle& a, const Bundle& b) {
    Bundle out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Bundle bundle_difference(const Bundle& a, const Bundle& b) {
    Bundle out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Bundle bundle_intersection(const Bundle& a, const Bundle& b) {
    Bundle out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool is_subset(const Bundle& inner, const Bundle& outer) {
    return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

}  // namespace efx
