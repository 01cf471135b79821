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

#include <gtest/gtest.h>

#include "support.hpp"

using namespace efx;
using namespace efx::testing;

namespace {

const Instance& worked() {
    static const Instance inst = running_example();
    return inst;
}

}  // namespace

TEST(Available, PartnerHoldsPart) {
    const auto x = alloc(worked(), {{0}, {1}, {3}, {16}, {}, {8}, {13}});
    EXPECT_EQ(available(worked(), x, 4, 1, worked_bipartition()), (Bundle{2}));
    EXPECT_TRUE(available(worked(), x, 1, 4, worked_bipartition()).empty());
}

TEST(Available, UntouchedPairUsesTheTSideCut) {
    const auto x = alloc(worked(), greedy_state());
    EXPECT_EQ(available(worked(), x, 5, 0, worked_bipartition()), (Bundle{4}));
    EXPECT_EQ(available(worked(), x, 0, 5, worked_bipartition()), (Bundle{4}));
}

TEST(Available, FullySplitPairHasNothing) {
    const auto x = alloc(worked(), {{}, {1}, {}, {}, {2}, {}, {}});
    EXPECT_TRUE(available(worked(), x, 1, 4, worked_bipartition()).empty());
    EXPECT_TRUE(available(worked(), x, 4, 1, worked_bipartition()).empty());
}

TEST(Available, NonAdjacentIsEmpty) {
    const auto x = empty_allocation(worked());
    EXPECT_TRUE(available(worked(), x, 0, 1, worked_bipartition()).empty());
}

TEST(Available, ThirdHolderBlocksThePair) {
    const Instance inst = symmetric(3, {{0, 1, "1"}, {0, 1, "2"}, {1, 2, "1"}});
    const auto x = alloc(inst, {{}, {}, {0}});
    const auto bip = Bipartition::from_t_side(3, {1});
    EXPECT_TRUE(available(inst, x, 0, 1, bip).empty());
    EXPECT_TRUE(available(inst, x, 1, 0, bip).empty());
}

TEST(Available, SameSideUntouchedPairIsRejected) {
    const Instance inst = symmetric(2, {{0, 1, "1"}});
    EXPECT_THROW((void)available(inst, empty_allocation(inst), 0, 1, Bipartition::from_t_side(2, {})),
                 PreconditionError);
}

TEST(Unallocated, Incident) {
    const auto x = alloc(worked(), reference_stage_two());
    EXPECT_EQ(unallocated_incident(worked(), x, 0), (Bundle{5, 10}));
    const auto empty = empty_allocation(worked());
    EXPECT_EQ(unallocated_incident(worked(), empty, 3), (Bundle{14, 15, 16, 17}));
    Bundle all;
    for (EdgeId e = 0; e < worked().items(); ++e) all.push_back(e);
    const auto full = alloc(worked(), {all, {}, {}, {}, {}, {}, {}});
    for (Agent a = 0; a < 7; ++a) EXPECT_TRUE(unallocated_incident(worked(), full, a).empty());
}

TEST(AvailableSet, ContainedInUnallocated) {
    const auto x = alloc(worked(), greedy_state());
    for (Agent a = 0; a < 7; ++a) {
        EXPECT_TRUE(is_subset(available_set(worked(), x, a, worked_bipartition()),
                              unallocated_incident(worked(), x, a)));
    }
    EXPECT_EQ(available_bundles(worked(), x, 0, worked_bipartition()).size(), worked().neighbors(0).size());
}

TEST(SafeSet, ReferenceStageThreeHasNoEnviedAgent) {
    // Agent 4 holds 10 + 3 against agent 0's 10, so agent 0 is not envied and
    // the safe set is undefined there.
    const auto x = alloc(worked(), reference_stage_three());
    EXPECT_FALSE(is_envied(worked(), x, 0));
    EXPECT_THROW((void)safe_set(worked(), x, 0, worked_bipartition()), PreconditionError);
}

TEST(SafeSet, ReferenceStageTwoAgentOneIsNotEnvied) {
    const auto x = alloc(worked(), reference_stage_two());
    EXPECT_THROW((void)safe_set(worked(), x, 1, worked_bipartition()), PreconditionError);
}

TEST(SafeSet, GreedyState) {
    // Agent 0 sees A_0 = {6-edge of E(0,5), 6-edge of E(0,6)} worth 12 > its 10.
    const auto x = alloc(worked(), greedy_state());
    EXPECT_EQ(worked().value(0, available_set(worked(), x, 0, worked_bipartition())), Rational(12));
    EXPECT_TRUE(safe_set(worked(), x, 0, worked_bipartition()).empty());
}

TEST(SafeSet, WorthlessBundlesMakeEveryoneSafe) {
    // 0 is envied by 1 and has nothing available; the others hold nothing 0 values.
    const Instance inst = symmetric(4, {{0, 1, "5"}, {1, 2, "1"}, {2, 3, "1"}});
    const auto x = alloc(inst, {{0}, {}, {}, {}});
    const auto bip = Bipartition::from_t_side(4, {1, 3});
    EXPECT_EQ(envied_set(inst, x), (std::vector<Agent>{0}));
    EXPECT_EQ(safe_set(inst, x, 0, bip), (std::vector<Agent>{1, 2, 3}));
}

TEST(Derive, MatchesIndividualQueries) {
    const auto x = alloc(worked(), greedy_state());
    const auto d = derive(worked(), x, worked_bipartition());
    EXPECT_EQ(d.available[0], available_set(worked(), x, 0, worked_bipartition()));
    EXPECT_TRUE(d.safe[0].has_value());
    EXPECT_FALSE(d.safe[2].has_value());
}
