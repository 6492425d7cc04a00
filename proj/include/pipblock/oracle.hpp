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

#ifndef PIPBLOCK_ORACLE_HPP_
#define PIPBLOCK_ORACLE_HPP_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pipblock/taskset.hpp"

namespace pipblock {

struct OracleOptions {
  // Upper limit on the uninformed search space, prod_{j>i} (|beta_j| + 1).
  std::uint64_t limit = 1'000'000;
};

struct OracleResult {
  Duration best_duration;
  // Optimal admissible chains, one representative per set of sections.
  std::vector<ZChain> best_chains;
  // Admissible ordered chains visited, the empty chain included.
  std::uint64_t chains_enumerated = 0;
  // prod_{j>i} (|beta_j| + 1): the size of an uninformed search.
  std::uint64_t search_space_size = 0;
};

class OracleLimitExceeded : public std::runtime_error {
 public:
  OracleLimitExceeded(std::uint64_t size, std::uint64_t limit);
};

// Exhaustive depth-first enumeration of admissible ordered chains.
OracleResult brute_force_blocking_time(const TaskSet& ts, int i, OracleOptions options = {});

std::uint64_t uninformed_search_space(const TaskSet& ts, int i);

// Jobs J_1..J_n where every job from J_{i+1} on holds disjoint sections on
// R_1..R_{n-i}, in that order, lasting `delta` on the anti-diagonal section
// z_{j,n-j+1} and `epsilon` elsewhere. J_1..J_i hold one `epsilon` section
// per resource, which puts every R_p in R^i.
TaskSet generate_antidiagonal_family(int n, int i, Duration delta, Duration epsilon);

struct RandomLimits {
  int jobs = 5;
  int resources = 4;
  int sections_per_job = 3;
  int nesting_depth = 2;
  int max_duration = 10;
};

// Reproducible random task set. Nested sections always use a resource of
// lower index than every enclosing one, so the resource order is acyclic.
TaskSet random_taskset(std::uint64_t seed, RandomLimits limits = {});

}  // namespace pipblock

#endif  // PIPBLOCK_ORACLE_HPP_
