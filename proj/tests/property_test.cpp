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

#include <future>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "pipblock/admissibility.hpp"
#include "pipblock/bound.hpp"
#include "pipblock/oracle.hpp"
#include "pipblock/relevance.hpp"
#include "pipblock/search.hpp"
#include "support.hpp"

namespace pipblock {
namespace {

constexpr std::uint64_t kInstances = 200;

RandomLimits limits_for(std::uint64_t seed) {
  RandomLimits limits;
  limits.jobs = 4 + static_cast<int>(seed % 3);  // 4..6
  limits.resources = 3 + static_cast<int>((seed / 3) % 3);  // 3..5
  limits.sections_per_job = 3;
  limits.nesting_depth = 1 + static_cast<int>(seed % 3);
  limits.max_duration = 9;
  return limits;
}

// Runs `check` for every seed on a pool of futures and gathers the failures.
template <typename Check>
std::vector<std::string> for_each_instance(Check check) {
  std::vector<std::future<std::vector<std::string>>> pending;
  constexpr std::uint64_t kChunks = 8;
  for (std::uint64_t chunk = 0; chunk < kChunks; ++chunk) {
    pending.push_back(std::async(std::launch::async, [chunk, &check] {
      std::vector<std::string> failures;
      for (std::uint64_t seed = chunk; seed < kInstances; seed += kChunks) {
        const TaskSet ts = random_taskset(seed, limits_for(seed));
        for (int i = 1; i <= ts.job_count(); ++i) {
          std::ostringstream why;
          if (!check(ts, i, why)) {
            failures.push_back("seed " + std::to_string(seed) + " J" + std::to_string(i) + ": " +
                               why.str() + "\n" + serialize(ts));
          }
        }
      }
      return failures;
    }));
  }
  std::vector<std::string> all;
  for (auto& f : pending) {
    auto part = f.get();
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

void expect_none(const std::vector<std::string>& failures) {
  EXPECT_TRUE(failures.empty()) << failures.size() << " failures, first:\n" << failures.front();
}

TEST(PropertyTest, SearchMatchesOracles) {
  expect_none(for_each_instance([](const TaskSet& ts, int i, std::ostream& why) {
    const Duration exact = blocking_time(ts, i).blocking_time;
    const Duration oracle = brute_force_blocking_time(ts, i).best_duration;
    const Duration reference = testing::Reference(ts).best(i);
    why << "search " << exact << " oracle " << oracle << " reference " << reference;
    return exact == oracle && oracle == reference;
  }));
}

TEST(PropertyTest, SearchMatchesOracleOnDeeperSets) {
  RandomLimits limits;
  limits.jobs = 6;
  limits.resources = 5;
  limits.sections_per_job = 5;
  limits.nesting_depth = 3;
  limits.max_duration = 10;
  std::vector<std::future<std::vector<std::string>>> pending;
  for (std::uint64_t chunk = 0; chunk < 8; ++chunk) {
    pending.push_back(std::async(std::launch::async, [chunk, &limits] {
      std::vector<std::string> failures;
      for (std::uint64_t seed = 1000 + chunk; seed < 3000; seed += 8) {
        const TaskSet ts = random_taskset(seed, limits);
        for (int i = 1; i <= 3; ++i) {
          const Duration exact = blocking_time(ts, i).blocking_time;
          const Duration oracle = brute_force_blocking_time(ts, i).best_duration;
          if (exact != oracle) {
            failures.push_back("seed " + std::to_string(seed) + " J" + std::to_string(i) + "\n" +
                               serialize(ts));
          }
        }
      }
      return failures;
    }));
  }
  std::vector<std::string> all;
  for (auto& f : pending) {
    auto part = f.get();
    all.insert(all.end(), part.begin(), part.end());
  }
  expect_none(all);
}

TEST(PropertyTest, WiderGuardsNeverOverestimate) {
  SearchOptions subset;
  subset.guard = DuplicateGuard::kSectionSubset;
  SearchOptions subsequence;
  subsequence.guard = DuplicateGuard::kSubsequence;
  expect_none(for_each_instance([&](const TaskSet& ts, int i, std::ostream& why) {
    const Duration exact = blocking_time(ts, i).blocking_time;
    const SearchResult a = blocking_time(ts, i, subset);
    const SearchResult b = blocking_time(ts, i, subsequence);
    why << exact << " vs " << a.blocking_time << " and " << b.blocking_time;
    return a.blocking_time <= exact && b.blocking_time <= exact &&
           is_admissible_chain(ts, i, a.witness).admissible &&
           is_admissible_chain(ts, i, b.witness).admissible;
  }));
}

TEST(PropertyTest, BoundIsSound) {
  expect_none(for_each_instance([](const TaskSet& ts, int i, std::ostream& why) {
    const Duration h = job_bound(ts, i).h;
    const Duration exact = brute_force_blocking_time(ts, i).best_duration;
    why << "h " << h << " < exact " << exact;
    return exact <= h;
  }));
}

TEST(PropertyTest, WitnessIsAdmissible) {
  expect_none(for_each_instance([](const TaskSet& ts, int i, std::ostream& why) {
    const SearchResult r = blocking_time(ts, i);
    why << "witness " << to_string(r.witness);
    return is_admissible_chain(ts, i, r.witness).admissible &&
           testing::Reference(ts).admissible(i, r.witness) &&
           chain_duration(ts, r.witness) == r.blocking_time;
  }));
}

TEST(PropertyTest, QuickCheckIsSound) {
  expect_none(for_each_instance([](const TaskSet& ts, int i, std::ostream& why) {
    const BoundResult b = job_bound(ts, i);
    const QuickCheckResult q = quick_admissibility_check(ts, i, b.matrix, b.assignment, b.h);
    if (!q.admissible) return true;
    const Duration exact = brute_force_blocking_time(ts, i).best_duration;
    why << "quick check accepted h " << b.h << " but exact is " << exact;
    return exact == b.h && testing::Reference(ts).admissible(i, q.chain);
  }));
}

TEST(PropertyTest, SearchInvariants) {
  expect_none(for_each_instance([](const TaskSet& ts, int i, std::ostream& why) {
    const SearchResult r = blocking_time(ts, i);
    for (Duration f : r.expanded_f) {
      if (r.blocking_time > f) {
        why << "expanded f " << f << " below B " << r.blocking_time;
        return false;
      }
    }
    const std::set<ZChain> unique(r.expanded_chains.begin(), r.expanded_chains.end());
    why << "duplicate expansions";
    return unique.size() == r.expanded_chains.size();
  }));
}

TEST(PropertyTest, FixpointIgnoresOrder) {
  expect_none(for_each_instance([](const TaskSet& ts, int i, std::ostream& why) {
    const ResourceSet base = relevant_resources(ts, i);
    std::set<int> expected;
    for (ResourceId r : base) expected.insert(r.index);
    if (expected != testing::Reference(ts).relevant(i)) {
      why << "differs from reference";
      return false;
    }
    for (std::uint64_t shuffle = 0; shuffle < 5; ++shuffle) {
      if (trace_relevant_resources(ts, i, shuffle).result() != base) {
        why << "shuffle " << shuffle;
        return false;
      }
    }
    return true;
  }));
}

TEST(PropertyTest, SerializeRoundTrip) {
  for (std::uint64_t seed = 0; seed < kInstances; ++seed) {
    const TaskSet ts = random_taskset(seed, limits_for(seed));
    const std::string text = serialize(ts);
    EXPECT_EQ(serialize(parse_taskset(text)), text) << seed;
  }
}

TEST(PropertyTest, BlockingMatrixMatchesDefinition) {
  expect_none(for_each_instance([](const TaskSet& ts, int i, std::ostream& why) {
    const testing::Reference ref(ts);
    const BoundResult b = job_bound(ts, i);
    std::vector<std::vector<Duration>> gain;
    for (int j : b.matrix.jobs) {
      auto& row = gain.emplace_back();
      for (ResourceId r : b.matrix.resources) {
        row.push_back(ref.longest(j, r.index));
        if (b.matrix.at(j, r) != row.back()) {
          why << "cell J" << j << " " << to_string(r);
          return false;
        }
      }
    }
    if (gain.size() > 6 || b.matrix.resources.size() > 6) return true;
    const Duration brute = testing::brute_force_assignment(gain);
    why << "h " << b.h << " brute force " << brute;
    return brute == b.h;
  }));
}

TEST(PropertyTest, HungarianMatchesPermutations) {
  std::mt19937_64 rng(20261018);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t rows = 1 + rng() % 6;
    const std::size_t cols = 1 + rng() % 6;
    const int range = trial % 2 ? 4 : 100;  // small ranges force ties
    std::vector<std::vector<int>> gain(rows, std::vector<int>(cols));
    DenseMatrix<int> m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        m(r, c) = gain[r][c] = static_cast<int>(rng() % static_cast<std::uint64_t>(range));
      }
    }
    EXPECT_EQ(max_assignment_value(m), testing::brute_force_assignment(gain)) << "trial " << trial;
  }
}

TEST(PropertyTest, AdmissibilityMatchesReference) {
  expect_none(for_each_instance([](const TaskSet& ts, int i, std::ostream& why) {
    const testing::Reference ref(ts);
    std::vector<SectionId> below;
    for (const Job& job : ts.jobs()) {
      if (job.index <= i) continue;
      for (const auto& cs : job.sections) below.push_back(cs.id);
    }
    for (SectionId a : below) {
      for (SectionId b : below) {
        for (SectionId c : below) {
          const ZChain chain{a, b, c};
          if (is_admissible_chain(ts, i, chain).admissible != ref.admissible(i, chain)) {
            why << to_string(chain);
            return false;
          }
        }
      }
    }
    return true;
  }));
}

}  // namespace
}  // namespace pipblock
