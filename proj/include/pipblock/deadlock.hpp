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

#ifndef PIPBLOCK_DEADLOCK_HPP_
#define PIPBLOCK_DEADLOCK_HPP_

#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pipblock/taskset.hpp"

namespace pipblock {

// Directed graph over resources with an edge outer -> inner whenever a
// section on `outer` (transitively) contains a section on `inner`.
struct ResourceOrderGraph {
  ResourceSet vertices;
  std::set<std::pair<ResourceId, ResourceId>> edges;
};

struct DeadlockVerdict {
  bool acyclic = true;
  // Closed walk R_a, ..., R_a when cyclic; empty otherwise.
  std::vector<ResourceId> cycle;
};

ResourceOrderGraph build_order_graph(const TaskSet& ts);

// Tarjan SCC pass over the order graph. When cycles exist, the witness is
// the lexicographically smallest simple cycle through the smallest resource
// that lies on any cycle.
DeadlockVerdict check_deadlock_free(const TaskSet& ts);

// Raised by analyses that need an acyclic resource order; the blocking time
// of a cyclic task set is unbounded.
class CyclicTaskSetError : public std::runtime_error {
 public:
  explicit CyclicTaskSetError(std::vector<ResourceId> cycle);
  const std::vector<ResourceId>& cycle() const { return cycle_; }

 private:
  std::vector<ResourceId> cycle_;
};

void require_deadlock_free(const TaskSet& ts);

std::string to_string(const std::vector<ResourceId>& cycle);

}  // namespace pipblock

#endif  // PIPBLOCK_DEADLOCK_HPP_
