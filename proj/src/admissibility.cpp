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

#include "pipblock/admissibility.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "pipblock/relevance.hpp"

namespace pipblock {

std::string to_string(Condition c) {
  switch (c) {
    case Condition::kNovelJob: return "NBJ";
    case Condition::kNovelResource: return "NBR";
    case Condition::kLimitedScopeMaximality: return "LSM";
    case Condition::kHigherPriorityObstruction: return "FHO";
    case Condition::kLowerPriorityObstruction: return "FLO";
    case Condition::kInductionCompatibility: return "induction-compatibility";
    case Condition::kDurationMismatch: return "duration-mismatch";
  }
  return "unknown";
}

namespace {

// The section of z's job that contains-or-equals z and uses `r`.
std::optional<SectionId> holder_of(const TaskSet& ts, SectionId z, ResourceId r) {
  if (ts.section(z).resource == r) return z;
  for (SectionId a : ts.enclosing(z)) {
    if (ts.section(a).resource == r) return a;
  }
  return std::nullopt;
}

void require_lower_priority(const TaskSet& ts, int i, SectionId z) {
  ts.check_job_index(i);
  ts.section(z);
  if (z.job <= i) {
    throw std::invalid_argument(to_string(z) + " cannot block J" + std::to_string(i) +
                                ": its job does not have lower priority");
  }
}

}  // namespace

bool is_induction_compatible(const TaskSet& ts, int i, const ZChain& chain, SectionId z) {
  ZChain members = chain;
  if (std::find(members.begin(), members.end(), z) == members.end()) members.push_back(z);
  std::set<int> jobs;
  ResourceSet resources;
  for (SectionId m : members) {
    require_lower_priority(ts, i, m);
    if (!jobs.insert(m.job).second || !resources.insert(ts.section(m).resource).second) {
      throw std::invalid_argument("induction compatibility needs sections of distinct jobs on "
                                  "distinct resources: " + to_string(members));
    }
  }

  const ResourceSet direct = direct_blocking_resources(ts, i);
  std::set<SectionId> compatible;
  for (SectionId m : members) {
    if (direct.contains(ts.section(m).resource)) compatible.insert(m);
  }
  bool grew = true;
  while (grew && !compatible.contains(z)) {
    grew = false;
    for (SectionId m : members) {
      if (compatible.contains(m)) continue;
      const ResourceId r = ts.section(m).resource;
      for (SectionId outer : compatible) {
        if (outer.job == m.job) continue;
        const auto& cs = ts.section(outer);
        const auto& sections = ts.job(outer.job).sections;
        bool nests = false;
        for (int q = outer.position + 1; q <= cs.subtree_end && !nests; ++q) {
          nests = sections[q - 1].resource == r;
        }
        if (nests) {
          compatible.insert(m);
          grew = true;
          break;
        }
      }
    }
  }
  return compatible.contains(z);
}

AdmissibilityVerdict check_extension(const TaskSet& ts, int i, const ZChain& chain, SectionId z) {
  require_lower_priority(ts, i, z);
  const CriticalSection& cs = ts.section(z);

  for (SectionId c : chain) {
    if (c.job == z.job) return AdmissibilityVerdict::fail(Condition::kNovelJob, {{c, z}});
  }
  for (SectionId c : chain) {
    if (ts.section(c).resource == cs.resource) {
      return AdmissibilityVerdict::fail(Condition::kNovelResource, {{c, z}});
    }
  }

  const ResourceSet scope = chain_induced_set(ts, i, chain);
  if (!scope.contains(cs.resource)) {
    return AdmissibilityVerdict::fail(Condition::kLimitedScopeMaximality);
  }
  for (SectionId outer : ts.enclosing(z)) {
    if (scope.contains(ts.section(outer).resource)) {
      return AdmissibilityVerdict::fail(Condition::kLimitedScopeMaximality, {{outer, z}});
    }
  }

  // FHO: nothing z's job holds at z may be needed by a higher-priority chain
  // member before it reaches its own chain section.
  const ResourceSet held = ts.held_resources(z);
  for (SectionId member : chain) {
    if (member.job >= z.job) continue;
    const auto& sections = ts.job(member.job).sections;
    for (int q = 1; q < member.position; ++q) {
      if (held.contains(sections[q - 1].resource)) {
        return AdmissibilityVerdict::fail(
            Condition::kHigherPriorityObstruction,
            {{sections[q - 1].id, *holder_of(ts, z, sections[q - 1].resource)}});
      }
    }
  }

  // FLO: z's job must reach z without needing anything a lower-priority
  // chain member holds.
  const auto& own = ts.job(z.job).sections;
  for (SectionId member : chain) {
    if (member.job <= z.job) continue;
    const ResourceSet member_holds = ts.held_resources(member);
    for (int o = 1; o < z.position; ++o) {
      if (member_holds.contains(own[o - 1].resource)) {
        return AdmissibilityVerdict::fail(
            Condition::kLowerPriorityObstruction,
            {{own[o - 1].id, *holder_of(ts, member, own[o - 1].resource)}});
      }
    }
  }
  return AdmissibilityVerdict::ok();
}

AdmissibilityVerdict is_admissible_chain(const TaskSet& ts, int i, const ZChain& chain) {
  ts.check_job_index(i);
  ZChain prefix;
  prefix.reserve(chain.size());
  for (std::size_t k = 0; k < chain.size(); ++k) {
    auto verdict = check_extension(ts, i, prefix, chain[k]);
    if (!verdict.admissible) {
      verdict.failed_at = k;
      return verdict;
    }
    prefix.push_back(chain[k]);
  }
  return AdmissibilityVerdict::ok();
}

AdmissibilityVerdict is_admissible_extension(const TaskSet& ts, int i, const ZChain& chain,
                                             SectionId z) {
  if (!is_admissible_chain(ts, i, chain).admissible) {
    throw std::invalid_argument("chain " + to_string(chain) + " is not admissible for J" +
                                std::to_string(i));
  }
  return check_extension(ts, i, chain, z);
}

QuickCheckResult quick_admissibility_check(const TaskSet& ts, int i, const BlockingMatrix& d,
                                           const std::vector<Assignment>& assignment, Duration h) {
  ts.check_job_index(i);
  QuickCheckResult result;
  std::vector<Assignment> pending = assignment;
  std::sort(pending.begin(), pending.end(),
            [](const Assignment& a, const Assignment& b) { return a.job < b.job; });

  ResourceSet scope = direct_blocking_resources(ts, i);
  while (true) {
    auto next = std::find_if(pending.begin(), pending.end(), [&](const Assignment& a) {
      return scope.contains(a.resource) && d.at(a.job, a.resource) > Duration::zero();
    });
    if (next == pending.end()) break;
    const Duration longest = d.at(next->job, next->resource);
    const auto& sections = ts.job(next->job).sections;
    auto leftmost = std::find_if(sections.begin(), sections.end(), [&](const CriticalSection& cs) {
      return cs.resource == next->resource && cs.duration == longest;
    });
    if (leftmost == sections.end()) {
      throw std::invalid_argument("blocking matrix does not match J" + std::to_string(next->job));
    }
    result.duration += longest;
    result.chain.push_back(leftmost->id);
    for (int q = leftmost->id.position + 1; q <= leftmost->subtree_end; ++q) {
      scope.insert(sections[q - 1].resource);
    }
    scope.erase(next->resource);
    pending.erase(next);
  }

  if (result.duration < h) {
    result.verdict = AdmissibilityVerdict::fail(Condition::kDurationMismatch);
    return result;
  }

  // Lowest priority first: no section up to the chosen one may need a
  // resource already held by a lower-priority chain member.
  ResourceSet held_below;
  for (int j = ts.job_count(); j > i; --j) {
    auto member = std::find_if(result.chain.begin(), result.chain.end(),
                               [j](SectionId z) { return z.job == j; });
    if (member == result.chain.end()) continue;
    const auto& sections = ts.job(j).sections;
    for (int q = 1; q <= member->position; ++q) {
      if (held_below.contains(sections[q - 1].resource)) {
        result.verdict = AdmissibilityVerdict::fail(Condition::kLowerPriorityObstruction,
                                                    {{sections[q - 1].id, *member}});
        return result;
      }
    }
    const ResourceSet held = ts.held_resources(*member);
    held_below.insert(held.begin(), held.end());
  }

  // The chain is returned as a witness, so it has to pass the full
  // definition in construction order as well.
  result.verdict = is_admissible_chain(ts, i, result.chain);
  result.admissible = result.verdict.admissible;
  return result;
}

}  // namespace pipblock
