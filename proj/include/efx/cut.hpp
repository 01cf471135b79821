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

#include <algorithm>

#include "efx/instance.hpp"

namespace efx {

/// Two-way split of E(cutter, other); both bundles are EFX-feasible for the cutter.
struct CutConfig {
    Agent cutter = 0;
    Agent other = 0;
    Bundle c1;  // received the first (most valuable) item
    Bundle c2;

    friend bool operator==(const CutConfig&, const CutConfig&) = default;
};

/// Greedy balanced split: items in descending cutter value (ties by id), each
/// appended to the currently lighter bundle (ties go to c1).
inline CutConfig cut(const Instance& inst, Agent cutter, Agent other) {
    Bundle items = inst.edges_between(cutter, other);
    std::stable_sort(items.begin(), items.end(), [&](EdgeId a, EdgeId b) {
        return inst.value(cutter, a) > inst.value(cutter, b);
    });
    CutConfig config{cutter, other, {}, {}};
    Rational w1;
    Rational w2;
    for (EdgeId e : items) {
        if (w2 < w1) {
            config.c2.push_back(e);
            w2 += inst.value(cutter, e);
        } else {
            config.c1.push_back(e);
            w1 += inst.value(cutter, e);
        }
    }
    std::sort(config.c1.begin(), config.c1.end());
    std::sort(config.c2.begin(), config.c2.end());
    return config;
}

/// The bundle `chooser` values most; c1 on ties.
inline const Bundle& preferred_bundle(const Instance& inst, const CutConfig& config, Agent chooser) {
    return inst.value(chooser, config.c2) > inst.value(chooser, config.c1) ? config.c2 : config.c1;
}

inline const Bundle& other_bundle(const CutConfig& config, const Bundle& chosen) {
    return &chosen == &config.c1 ? config.c2 : config.c1;
}

}  // namespace efx
