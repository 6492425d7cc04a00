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

#include "pipblock/oracle.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "pipblock/admissibility.hpp"
#include "pipblock/deadlock.hpp"

namespace pipblock {

OracleLimitExceeded::OracleLimitExceeded(std::uint64_t size, std::uint64_t limit)
    : std::runtime_error("uninformed search space " + std::to_string(size) +
                         " exceeds the oracle limit " + std::to_string(limit)) {}

std::uint64_t uninformed_search_space(const TaskSet& ts, int i) {
  std::uint64_t size = 1;
  for (int j = i + 1; j <= ts.job_count(); ++j) {
    const std::uint64_t factor = ts.job(j).sections.size() + 1;
    if (size > UINT64_MAX / factor) return UINT64_MAX;
    size *= factor;
  }
  return size;
}

OracleResult brute_force_blocking_time(const TaskSet& ts, int i, OracleOptions options) {
  ts.check_job_index(i);
  require_deadlock_free(ts);
  OracleResult result;
  result.search_space_size = uninformed_search_space(ts, i);
  if (result.search_space_size > options.limit) {
    throw OracleLimitExceeded(result.search_space_size, options.limit);
  }

  std::vector<SectionId> candidates;
  for (int j = i + 1; j <= ts.job_count(); ++j) {
    for (const auto& cs : ts.job(j).sections) candidates.push_back(cs.id);
  }

  std::map<std::vector<SectionId>, ZChain> best;
  ZChain chain;
  Duration duration;
  auto visit = [&](auto&& self) -> void {
    ++result.chains_enumerated;
    if (duration > result.best_duration) {
      result.best_duration = duration;
      best.clear();
    }
    if (duration == result.best_duration) {
      std::vector<SectionId> key = chain;
      std::sort(key.begin(), key.end());
      best.try_emplace(std::move(key), chain);
    }
    for (SectionId z : candidates) {
      if (!check_extension(ts, i, chain, z).admissible) continue;
      chain.push_back(z);
      duration += ts.section(z).duration;
      self(self);
      duration -= ts.section(z).duration;
      chain.pop_back();
    }
  };
  visit(visit);

  for (auto& [key, representative] : best) result.best_chains.push_back(std::move(representative));
  return result;
}

TaskSet generate_antidiagonal_family(int n, int i, Duration delta, Duration epsilon) {
  if (i < 1 || i >= n) throw std::invalid_argument("antidiagonal family needs 1 <= i < n");
  if (!(epsilon < delta)) throw std::invalid_argument("antidiagonal family needs epsilon < delta");
  const int m = n - i;
  std::vector<std::vector<SectionSpec>> jobs(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    for (int p = 1; p <= m; ++p) {
      Duration d = (j > i && p == n - j + 1) ? delta : epsilon;
      jobs[static_cast<std::size_t>(j - 1)].push_back({ResourceId{p}, d, {}});
    }
  }
  return TaskSet::from_specs(jobs);
}

TaskSet random_taskset(std::uint64_t seed, RandomLimits limits) {
  if (limits.jobs < 1 || limits.resources < 1 || limits.sections_per_job < 1 ||
      limits.nesting_depth < 1 || limits.max_duration < 1) {
    throw std::invalid_argument("random task set limits must be positive");
  }
  // Raw engine output keeps the sequence identical across standard libraries.
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };

  std::vector<std::vector<SectionSpec>> jobs(static_cast<std::size_t>(limits.jobs));
  for (auto& job : jobs) {
    int budget = uniform(0, limits.sections_per_job);
    // Sections at nesting level `depth`, all on resources below `ceiling`.
    auto grow = [&](auto&& self, int ceiling, int depth) -> std::vector<SectionSpec> {
      std::vector<SectionSpec> out;
      while (budget > 0 && ceiling > 1) {
        if (depth > 1 && uniform(0, 1) == 0) break;
        SectionSpec spec{ResourceId{uniform(1, ceiling - 1)},
                         Duration::units(uniform(1, limits.max_duration)),
                         {}};
        --budget;
        if (depth < limits.nesting_depth) spec.nested = self(self, spec.resource.index, depth + 1);
        out.push_back(std::move(spec));
      }
      return out;
    };
    job = grow(grow, limits.resources + 1, 1);
  }
  return TaskSet::from_specs(jobs);
}

}  // namespace pipblock
