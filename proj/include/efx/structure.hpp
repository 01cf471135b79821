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

// Skeleton-level queries plus the family label the solvers dispatch on.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "efx/instance.hpp"

namespace efx {

enum class Family { multi_star, multi_cycle, multi_tree, bipartite, general };

inline std::string_view to_string(Family f) {
    switch (f) {
        case Family::multi_star: return "multi-star";
        case Family::multi_cycle: return "multi-cycle";
        case Family::multi_tree: return "multi-tree";
        case Family::bipartite: return "bipartite";
        case Family::general: return "general";
    }
    return "general";
}

/// Two-colouring of the skeleton into S and T.
class Bipartition {
public:
    Bipartition() = default;
    explicit Bipartition(std::vector<bool> in_t) : in_t_(std::move(in_t)) {}

    static Bipartition from_t_side(std::size_t n, const std::vector<Agent>& t_side) {
        std::vector<bool> in_t(n, false);
        for (Agent a : t_side) in_t.at(a) = true;
        return Bipartition(std::move(in_t));
    }

    [[nodiscard]] bool in_t(Agent a) const { return in_t_.at(a); }
    [[nodiscard]] bool in_s(Agent a) const { return !in_t_.at(a); }
    [[nodiscard]] std::size_t agents() const { return in_t_.size(); }

    [[nodiscard]] std::vector<Agent> s_side() const { return side(false); }
    [[nodiscard]] std::vector<Agent> t_side() const { return side(true); }

    /// True when no skeleton edge has both endpoints on the same side.
    [[nodiscard]] bool valid_for(const Instance& inst) const {
        if (in_t_.size() != inst.agents()) return false;
        return std::all_of(inst.edges().begin(), inst.edges().end(),
                           [&](const EdgeItem& e) { return in_t_[e.u] != in_t_[e.v]; });
    }

    friend bool operator==(const Bipartition&, const Bipartition&) = default;

private:
    [[nodiscard]] std::vector<Agent> side(bool t) const {
        std::vector<Agent> out;
        for (Agent a = 0; a < in_t_.size(); ++a) {
            if (in_t_[a] == t) out.push_back(a);
        }
        return out;
    }

    std::vector<bool> in_t_;
};

struct StructureReport {
    std::size_t q = 0;
    std::size_t diameter = 0;                  // shortest-path diameter, max over components
    std::optional<std::size_t> longest_path;  // longest simple path; empty when too large to enumerate
    Agent center = kNoAgent;                   // within the largest component
    bool connected = true;
    std::size_t components = 0;
    std::optional<Bipartition> bipartition;
    Family family = Family::general;
};

/// Connected components of the skeleton, each sorted, ordered by lowest member.
inline std::vector<std::vector<Agent>> components(const Instance& inst) {
    const std::size_t n = inst.agents();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<Agent>> out;
    for (Agent root = 0; root < n; ++root) {
        if (seen[root]) continue;
        std::vector<Agent> comp;
        std::deque<Agent> queue{root};
        seen[root] = true;
        while (!queue.empty()) {
            Agent a = queue.front();
            queue.pop_front();
            comp.push_back(a);
            for (Agent b : inst.neighbors(a)) {
                if (!seen[b]) {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

/// BFS hop distances from `source`; unreachable agents get kNoAgent.
inline std::vector<std::size_t> skeleton_distances(const Instance& inst, Agent source) {
    std::vector<std::size_t> dist(inst.agents(), kNoAgent);
    std::deque<Agent> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        Agent a = queue.front();
        queue.pop_front();
        for (Agent b : inst.neighbors(a)) {
            if (dist[b] == kNoAgent) {
                dist[b] = dist[a] + 1;
                queue.push_back(b);
            }
        }
    }
    return dist;
}

/// Canonical two-colouring: in every component the lowest agent id is on
/// side S. Empty when some component contains an odd cycle.
inline std::optional<Bipartition> two_colour(const Instance& inst) {
    const std::size_t n = inst.agents();
    std::vector<int> colour(n, -1);
    for (Agent root = 0; root < n; ++root) {
        if (colour[root] != -1) continue;
        colour[root] = 0;
        std::deque<Agent> queue{root};
        while (!queue.empty()) {
            Agent a = queue.front();
            queue.pop_front();
            for (Agent b : inst.neighbors(a)) {
                if (colour[b] == -1) {
                    colour[b] = 1 - colour[a];
                    queue.push_back(b);
                } else if (colour[b] == colour[a]) {
                    return std::nullopt;
                }
            }
        }
    }
    std::vector<bool> in_t(n);
    for (Agent a = 0; a < n; ++a) in_t[a] = colour[a] == 1;
    return Bipartition(std::move(in_t));
}

inline std::size_t max_multiplicity(const Instance& inst) {
    std::size_t q = 0;
    for (const auto& [pair, list] : inst.pairs()) q = std::max(q, list.size());
    return q;
}

namespace detail {

inline std::size_t skeleton_edge_count(const Instance& inst, const std::vector<Agent>& comp) {
    std::size_t degree_sum = 0;
    for (Agent a : comp) degree_sum += inst.neighbors(a).size();
    return degree_sum / 2;
}

inline bool is_star_component(const Instance& inst, const std::vector<Agent>& comp) {
    if (skeleton_edge_count(inst, comp) != comp.size() - 1) return false;
    return std::any_of(comp.begin(), comp.end(),
                       [&](Agent a) { return inst.neighbors(a).size() == comp.size() - 1; });
}

inline bool is_cycle_component(const Instance& inst, const std::vector<Agent>& comp) {
    return comp.size() >= 3 && std::all_of(comp.begin(), comp.end(), [&](Agent a) {
               return inst.neighbors(a).size() == 2;
           });
}

// Exhaustive simple-path search; only used on small skeletons.
inline std::size_t longest_simple_path(const Instance& inst) {
    const std::size_t n = inst.agents();
    std::vector<bool> on_path(n, false);
    std::size_t best = 0;
    std::function<void(Agent, std::size_t)> extend = [&](Agent a, std::size_t len) {
        best = std::max(best, len);
        for (Agent b : inst.neighbors(a)) {
            if (on_path[b]) continue;
            on_path[b] = true;
            extend(b, len + 1);
            on_path[b] = false;
        }
    };
    for (Agent a = 0; a < n; ++a) {
        on_path[a] = true;
        extend(a, 0);
        on_path[a] = false;
    }
    return best;
}

}  // namespace detail

inline constexpr std::size_t kLongestPathAgentLimit = 16;

inline StructureReport analyze_structure(const Instance& inst) {
    StructureReport report;
    report.q = max_multiplicity(inst);
    const auto comps = components(inst);
    report.components = comps.size();
    report.connected = comps.size() <= 1;
    report.bipartition = two_colour(inst);

    // Eccentricities per component; the largest component hosts the center.
    const std::vector<Agent>* largest = nullptr;
    for (const auto& comp : comps) {
        if (largest == nullptr || comp.size() > largest->size()) largest = &comp;
    }
    std::vector<std::size_t> ecc(inst.agents(), 0);
    for (const auto& comp : comps) {
        for (Agent a : comp) {
            const auto dist = skeleton_distances(inst, a);
            for (Agent b : comp) ecc[a] = std::max(ecc[a], dist[b]);
            report.diameter = std::max(report.diameter, ecc[a]);
        }
    }
    if (largest != nullptr) {
        report.center = largest->front();
        for (Agent a : *largest) {
            if (ecc[a] < ecc[report.center]) report.center = a;
        }
    }

    std::vector<const std::vector<Agent>*> nontrivial;
    for (const auto& comp : comps) {
        if (comp.size() > 1) nontrivial.push_back(&comp);
    }
    const bool forest = std::all_of(nontrivial.begin(), nontrivial.end(), [&](const auto* comp) {
        return detail::skeleton_edge_count(inst, *comp) == comp->size() - 1;
    });
    if (forest) {
        report.longest_path = report.diameter;
    } else if (inst.agents() <= kLongestPathAgentLimit) {
        report.longest_path = detail::longest_simple_path(inst);
    }

    if (std::all_of(nontrivial.begin(), nontrivial.end(),
                    [&](const auto* comp) { return detail::is_star_component(inst, *comp); })) {
        report.family = Family::multi_star;
    } else if (nontrivial.size() == 1 && detail::is_cycle_component(inst, *nontrivial.front())) {
        report.family = Family::multi_cycle;
    } else if (forest) {
        report.family = Family::multi_tree;
    } else if (report.bipartition) {
        report.family = Family::bipartite;
    } else {
        report.family = Family::general;
    }
    return report;
}

}  // namespace efx
