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

#ifndef PIPBLOCK_RELEVANCE_HPP_
#define PIPBLOCK_RELEVANCE_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "pipblock/taskset.hpp"

namespace pipblock {

// Resources and jobs that can block a target job J_i, without (direct_*) and
// with (relevant_*) transitive priority inheritance through nested sections.
struct BlockingScope {
  int target = 0;
  ResourceSet direct_resources;
  JobSet direct_jobs;
  ResourceSet relevant_resources;
  JobSet relevant_jobs;
};

// Resources used both by some J_k with k <= i and by some J_j with j > i.
ResourceSet direct_blocking_resources(const TaskSet& ts, int i);

// Jobs J_j, j > i, using at least one resource of `resources`.
JobSet jobs_using(const TaskSet& ts, int i, const ResourceSet& resources);

JobSet direct_blocking_jobs(const TaskSet& ts, int i);

// z uses a resource in `scope` and no section of its job containing z does.
bool is_maximal(const TaskSet& ts, SectionId z, const ResourceSet& scope);

// Sections of J_j that are maximal with respect to `scope`, in position order.
std::vector<SectionId> maximal_sequence(const TaskSet& ts, int j, const ResourceSet& scope);

// Resources of sections nested in z, outside `scope`, that some other job
// of lower priority than J_i also uses. Throws std::invalid_argument unless
// z is maximal with respect to `scope` and belongs to a job below J_i.
ResourceSet induced_set(const TaskSet& ts, int i, SectionId z, const ResourceSet& scope);

// Same formula without the precondition checks.
ResourceSet induced_resources(const TaskSet& ts, int i, SectionId z, const ResourceSet& scope);

struct FixpointStep {
  SectionId section;
  ResourceSet induced;
  ResourceSet result;
};

struct FixpointTrace {
  ResourceSet initial;
  std::vector<FixpointStep> steps;

  const ResourceSet& result() const { return steps.empty() ? initial : steps.back().result; }
  // Iterate k: initial for k = 0, otherwise the result of step k.
  std::vector<ResourceSet> iterates() const;
};

// Least fixpoint of the induced-set operator starting from R^i. Sections are
// picked in job order, then position order; with `shuffle_seed` the pick
// among productive sections is random (the result is the same either way).
FixpointTrace trace_relevant_resources(const TaskSet& ts, int i,
                                       std::optional<std::uint64_t> shuffle_seed = {});

ResourceSet relevant_resources(const TaskSet& ts, int i);
JobSet relevant_jobs(const TaskSet& ts, int i);

BlockingScope blocking_scope(const TaskSet& ts, int i);

// R^i together with the sets induced by each element of the chain.
ResourceSet chain_induced_set(const TaskSet& ts, int i, const ZChain& chain);

}  // namespace pipblock

#endif  // PIPBLOCK_RELEVANCE_HPP_
