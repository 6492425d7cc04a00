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

#ifndef PIPBLOCK_BOUND_HPP_
#define PIPBLOCK_BOUND_HPP_

#include <map>
#include <vector>

#include "pipblock/hungarian.hpp"
#include "pipblock/taskset.hpp"

namespace pipblock {

// Longest section of each job on each resource (zero when unused).
struct BlockingMatrix {
  std::vector<int> jobs;
  std::vector<ResourceId> resources;
  DenseMatrix<Duration> cells;

  Duration at(int job, ResourceId resource) const;
};

struct Assignment {
  int job = 0;
  ResourceId resource;
  Duration duration;
  bool operator==(const Assignment&) const = default;
};

struct BoundResult {
  Duration h;
  // Job/resource pairs realising h, ascending by job. Pairs of zero
  // duration and phantom padding pairs are omitted.
  std::vector<Assignment> assignment;
  BlockingMatrix matrix;
};

BlockingMatrix blocking_time_matrix(const TaskSet& ts, const JobSet& jobs,
                                    const ResourceSet& resources);

// Largest sum of longest-section durations with all-different jobs and
// all-different resources. Among optimal assignments the one chosen is
// smallest in (job, resource) order.
BoundResult hungarian_bound(const TaskSet& ts, const JobSet& jobs, const ResourceSet& resources);

// Bound value only; used as the search heuristic.
Duration hungarian_value(const TaskSet& ts, const JobSet& jobs, const ResourceSet& resources);

// Nested-section bound for every job, from its relevant jobs and resources.
// Throws CyclicTaskSetError when the resource order has a cycle.
std::map<int, BoundResult> per_job_bounds(const TaskSet& ts);

// Bound for a single job with respect to its relevant jobs and resources.
BoundResult job_bound(const TaskSet& ts, int i);

}  // namespace pipblock

#endif  // PIPBLOCK_BOUND_HPP_
