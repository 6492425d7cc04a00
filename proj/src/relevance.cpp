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

#include "pipblock/relevance.hpp"

#include <random>
#include <stdexcept>

namespace pipblock {

ResourceSet direct_blocking_resources(const TaskSet& ts, int i) {
  ts.check_job_index(i);
  ResourceSet higher, lower;
  for (const Job& job : ts.jobs()) {
    auto& target = job.index <= i ? higher : lower;
    for (const auto& cs : job.sections) target.insert(cs.resource);
  }
  ResourceSet out;
  for (ResourceId r : higher) {
    if (lower.contains(r)) out.insert(r);
  }
  return out;
}

JobSet jobs_using(const TaskSet& ts, int i, const ResourceSet& resources) {
  JobSet out;
  for (int j = i + 1; j <= ts.job_count(); ++j) {
    for (const auto& cs : ts.job(j).sections) {
      if (resources.contains(cs.resource)) {
        out.insert(j);
        break;
      }
    }
  }
  return out;
}

JobSet direct_blocking_jobs(const TaskSet& ts, int i) {
  return jobs_using(ts, i, direct_blocking_resources(ts, i));
}

bool is_maximal(const TaskSet& ts, SectionId z, const ResourceSet& scope) {
  const auto& cs = ts.section(z);
  if (!scope.contains(cs.resource)) return false;
  for (SectionId outer : ts.enclosing(z)) {
    if (scope.contains(ts.section(outer).resource)) return false;
  }
  return true;
}

std::vector<SectionId> maximal_sequence(const TaskSet& ts, int j, const ResourceSet& scope) {
  std::vector<SectionId> out;
  for (const auto& cs : ts.job(j).sections) {
    if (is_maximal(ts, cs.id, scope)) out.push_back(cs.id);
  }
  return out;
}

namespace {

bool used_by_other_lower_job(const TaskSet& ts, int i, int j, ResourceId r) {
  for (int k = i + 1; k <= ts.job_count(); ++k) {
    if (k == j) continue;
    for (const auto& cs : ts.job(k).sections) {
      if (cs.resource == r) return true;
    }
  }
  return false;
}

}  // namespace

ResourceSet induced_resources(const TaskSet& ts, int i, SectionId z, const ResourceSet& scope) {
  const auto& outer = ts.section(z);
  const auto& sections = ts.job(z.job).sections;
  ResourceSet out;
  for (int q = z.position + 1; q <= outer.subtree_end; ++q) {
    ResourceId r = sections[q - 1].resource;
    if (!scope.contains(r) && used_by_other_lower_job(ts, i, z.job, r)) out.insert(r);
  }
  return out;
}

ResourceSet induced_set(const TaskSet& ts, int i, SectionId z, const ResourceSet& scope) {
  ts.check_job_index(i);
  if (z.job <= i) {
    throw std::invalid_argument(to_string(z) + " does not belong to a job of lower priority than J" +
                                std::to_string(i));
  }
  if (!is_maximal(ts, z, scope)) {
    throw std::invalid_argument(to_string(z) + " is not maximal with respect to " +
                                to_string(scope));
  }
  return induced_resources(ts, i, z, scope);
}

std::vector<ResourceSet> FixpointTrace::iterates() const {
  std::vector<ResourceSet> out{initial};
  for (const auto& step : steps) out.push_back(step.result);
  return out;
}

FixpointTrace trace_relevant_resources(const TaskSet& ts, int i,
                                       std::optional<std::uint64_t> shuffle_seed) {
  FixpointTrace trace;
  trace.initial = direct_blocking_resources(ts, i);
  ResourceSet current = trace.initial;
  std::mt19937_64 rng(shuffle_seed.value_or(0));

  while (current.size() < ts.resources().size()) {
    std::vector<std::pair<SectionId, ResourceSet>> productive;
    for (int j = i + 1; j <= ts.job_count(); ++j) {
      for (SectionId z : maximal_sequence(ts, j, current)) {
        auto induced = induced_resources(ts, i, z, current);
        if (!induced.empty()) {
          productive.emplace_back(z, std::move(induced));
          if (!shuffle_seed) break;
        }
      }
      if (!shuffle_seed && !productive.empty()) break;
    }
    if (productive.empty()) break;
    auto& [z, induced] = shuffle_seed ? productive[rng() % productive.size()] : productive.front();
    current.insert(induced.begin(), induced.end());
    trace.steps.push_back({z, std::move(induced), current});
  }
  return trace;
}

ResourceSet relevant_resources(const TaskSet& ts, int i) {
  return trace_relevant_resources(ts, i).result();
}

JobSet relevant_jobs(const TaskSet& ts, int i) {
  return jobs_using(ts, i, relevant_resources(ts, i));
}

BlockingScope blocking_scope(const TaskSet& ts, int i) {
  BlockingScope scope;
  scope.target = i;
  scope.direct_resources = direct_blocking_resources(ts, i);
  scope.direct_jobs = jobs_using(ts, i, scope.direct_resources);
  scope.relevant_resources = relevant_resources(ts, i);
  scope.relevant_jobs = jobs_using(ts, i, scope.relevant_resources);
  return scope;
}

ResourceSet chain_induced_set(const TaskSet& ts, int i, const ZChain& chain) {
  const ResourceSet direct = direct_blocking_resources(ts, i);
  ResourceSet out = direct;
  for (SectionId z : chain) {
    auto induced = induced_resources(ts, i, z, direct);
    out.insert(induced.begin(), induced.end());
  }
  return out;
}

}  // namespace pipblock
