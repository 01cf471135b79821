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

// Shared fixtures for the unit suites.

#include <string>
#include <tuple>
#include <vector>

#include "efx/efx.hpp"

namespace efx::testing {

inline Rational R(const std::string& text) { return Rational::parse(text); }

struct E {
    Agent u;
    Agent v;
    std::string wu;
    std::string wv;
};

inline Instance make(std::size_t n, const std::vector<E>& edges) {
    std::vector<EdgeItem> items;
    for (const auto& e : edges) items.push_back(EdgeItem{e.u, e.v, R(e.wu), R(e.wv)});
    return Instance(n, std::move(items));
}

inline Instance symmetric(std::size_t n, const std::vector<std::tuple<Agent, Agent, std::string>>& edges) {
    std::vector<EdgeItem> items;
    for (const auto& [u, v, w] : edges) items.push_back(EdgeItem{u, v, R(w), R(w)});
    return Instance(n, std::move(items));
}

inline Allocation alloc(const Instance& inst, const std::vector<Bundle>& bundles) {
    return Allocation::from_bundles(inst.items(), bundles);
}

// Worked 7-agent example, edge ids in generation order:
//   0 (0,4)10  1 (1,4)10  2 (1,4)9  3 (2,4)8  4 (0,5)6  5 (0,5)5  6 (1,5)6  7 (1,5)6  8 (2,5)7
//   9 (0,6)6  10 (0,6)5  11 (1,6)6  12 (1,6)6  13 (2,6)7  14 (3,6)3  15 (3,6)4  16 (3,4)6  17 (3,4)3

/// State after the greedy stage.
inline std::vector<Bundle> greedy_state() { return {{0}, {1}, {3}, {16}, {2}, {8}, {13}}; }

/// Reference state listed for the end of stage 2.
inline std::vector<Bundle> reference_stage_two() {
    return {{0}, {1}, {3}, {15, 16}, {2, 17}, {4, 6, 8}, {9, 11, 13, 14}};
}

/// Reference state listed for the end of stage 3.
inline std::vector<Bundle> reference_stage_three() {
    return {{0}, {2, 7, 12}, {3}, {15, 16}, {1, 17}, {4, 6, 8}, {9, 11, 13, 14}};
}

/// What stage 2 actually produces with ascending scans: a complete EFX orientation.
inline std::vector<Bundle> computed_stage_two() {
    return {{0, 4, 9}, {1, 6, 11}, {3}, {15, 16}, {2, 17}, {5, 7, 8}, {10, 12, 13, 14}};
}

inline Bipartition worked_bipartition() { return Bipartition::from_t_side(7, {4, 5, 6}); }

}  // namespace efx::testing
