// Copyright 2026 The pipblock Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pipblock/deadlock.hpp"

#include "gtest/gtest.h"
#include "pipblock/bound.hpp"
#include "pipblock/search.hpp"
#include "support.hpp"

namespace pipblock {
namespace {

using Edge = std::pair<ResourceId, ResourceId>;

TEST(OrderGraphTest, EdgesFollowTransitiveNesting) {
  const ResourceOrderGraph g = build_order_graph(parse_taskset(testing::kTsA));
  const std::set<Edge> expected{{ResourceId{4}, ResourceId{3}}, {ResourceId{4}, ResourceId{2}},
                                {ResourceId{3}, ResourceId{2}}, {ResourceId{2}, ResourceId{1}}};
  EXPECT_EQ(g.edges, expected);
  EXPECT_EQ(g.vertices.size(), 4u);
}

TEST(DeadlockTest, FixturesAreAcyclic) {
  for (const char* text : testing::all_fixtures()) {
    const DeadlockVerdict v = check_deadlock_free(parse_taskset(text));
    EXPECT_TRUE(v.acyclic) << text;
    EXPECT_TRUE(v.cycle.empty());
  }
}

TEST(DeadlockTest, CrossNesting) {
  const DeadlockVerdict v = check_deadlock_free(parse_taskset(testing::kCrossNesting));
  EXPECT_FALSE(v.acyclic);
  EXPECT_EQ(v.cycle, (std::vector<ResourceId>{ResourceId{1}, ResourceId{2}, ResourceId{1}}));
  EXPECT_EQ(to_string(v.cycle), "(R1, R2, R1)");
}

TEST(DeadlockTest, ThreeResourceCycle) {
  const TaskSet ts = parse_taskset(
      "J1: [R1: 1 [R2: 1]]\n"
      "J2: [R2: 1 [R3: 1]]\n"
      "J3: [R3: 1 [R1: 1]]\n"
      "J4: [R4: 1 [R1: 1]]\n");
  const DeadlockVerdict v = check_deadlock_free(ts);
  EXPECT_FALSE(v.acyclic);
  EXPECT_EQ(v.cycle, (std::vector<ResourceId>{ResourceId{1}, ResourceId{2}, ResourceId{3},
                                              ResourceId{1}}));
}

TEST(DeadlockTest, DeepNestingCountsAsOrder) {
  // R3 inside R1 only through R2, yet R3 -> R1 elsewhere closes a cycle.
  const TaskSet ts = parse_taskset(
      "J1: [R1: 1 [R2: 1 [R3: 1]]]\n"
      "J2: [R3: 1 [R1: 1]]\n");
  EXPECT_FALSE(check_deadlock_free(ts).acyclic);
}

TEST(DeadlockTest, CyclicSetsAreRefused) {
  const TaskSet ts = parse_taskset(testing::kCrossNesting);
  EXPECT_THROW(require_deadlock_free(ts), CyclicTaskSetError);
  EXPECT_THROW(per_job_bounds(ts), CyclicTaskSetError);
  EXPECT_THROW(blocking_time(ts, 1), CyclicTaskSetError);
  try {
    require_deadlock_free(ts);
  } catch (const CyclicTaskSetError& e) {
    EXPECT_EQ(e.cycle().size(), 3u);
  }
}

}  // namespace
}  // namespace pipblock
