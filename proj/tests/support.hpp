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

#ifndef PIPBLOCK_TESTS_SUPPORT_HPP_
#define PIPBLOCK_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "pipblock/taskset.hpp"

namespace pipblock::testing {

inline constexpr const char* kTsA =
    "J1: [R4: 1]\n"
    "J2: [R4: 6 [R3: 4 [R2: 2]]]\n"
    "J3: [R4: 10] [R2: 3 [R1: 1]] [R3: 5]\n"
    "J4: [R1: 2] [R2: 4]\n";

inline constexpr const char* kTsB =
    "J1: [R2: 1]\n"
    "J2: [R4: 1] [R3: 1] [R4: 1]\n"
    "J3: [R4: 3] [R3: 2]\n"
    "J4: [R2: 1] [R1: 1] [R2: 1]\n"
    "J5: [R3: 1] [R2: 1] [R3: 2]\n"
    "J6: [R1: 2]\n";

inline constexpr const char* kTsC =
    "J1: [R1: 4] [R2: 5]\n"
    "J2: [R2: 4] [R1: 3]\n"
    "J3: [R1: 1] [R2: 3]\n"
    "J4: [R2: 1]\n";

inline constexpr const char* kTsD =
    "J1: [R2: 1]\n"
    "J2: [R4: 3 [R3: 1]]\n"
    "J3: [R4: 3] [R3: 2]\n"
    "J4: [R2: 3 [R1: 1]]\n"
    "J5: [R3: 4 [R2: 1]]\n"
    "J6: [R1: 2]\n";

inline constexpr const char* kTsE =
    "J1: [R2: 1]\n"
    "J2: [R2: 2] [R2: 2 [R1: 1]]\n"
    "J3: [R1: 2]\n";

inline constexpr const char* kTsF =
    "J1: [R4: 1]\n"
    "J2: [R4: 6 [R3: 4 [R2: 2]]]\n"
    "J3: [R1: 5] [R5: 13 [R4: 10]]\n"
    "J4: [R3: 3 [R1: 1]] [R5: 1] [R4: 12 [R2: 9]]\n"
    "J5: [R1: 4] [R5: 13 [R2: 12]] [R1: 7]\n";

inline constexpr const char* kCrossNesting =
    "J1: [R1: 1 [R2: 1]]\n"
    "J2: [R2: 1 [R1: 1]]\n";

inline std::vector<const char*> all_fixtures() { return {kTsA, kTsB, kTsC, kTsD, kTsE, kTsF}; }

inline ResourceSet resources(std::initializer_list<int> ids) {
  ResourceSet out;
  for (int r : ids) out.insert(ResourceId{r});
  return out;
}

inline std::vector<SectionId> sorted(ZChain chain) {
  std::sort(chain.begin(), chain.end());
  return chain;
}

// Straight transcription of the blocking definitions, kept apart from the
// library so the two can be compared. Containment is rebuilt from parent
// links only.
class Reference {
 public:
  explicit Reference(const TaskSet& ts) : n_(ts.job_count()) {
    for (const Job& job : ts.jobs()) {
      auto& out = jobs_[job.index];
      for (const auto& cs : job.sections) {
        Section s{cs.resource.index, cs.duration, {}};
        for (auto p = cs.parent; p; p = job.sections[*p - 1].parent) s.ancestors.insert(*p);
        out.push_back(s);
        all_resources_.insert(cs.resource.index);
      }
    }
  }

  int job_count() const { return n_; }

  // z_{j,a} strictly contains z_{j,b}
  bool contains(int j, int a, int b) const { return at(j, b).ancestors.contains(a); }

  int resource(SectionId z) const { return at(z.job, z.position).resource; }

  std::set<int> direct(int i) const {
    std::set<int> out;
    for (int r : all_resources_) {
      bool high = false, low = false;
      for (int k = 1; k <= n_; ++k) {
        for (const auto& s : jobs_.at(k)) {
          if (s.resource != r) continue;
          (k <= i ? high : low) = true;
        }
      }
      if (high && low) out.insert(r);
    }
    return out;
  }

  bool maximal(SectionId z, const std::set<int>& scope) const {
    if (!scope.contains(resource(z))) return false;
    for (int a : at(z.job, z.position).ancestors) {
      if (scope.contains(at(z.job, a).resource)) return false;
    }
    return true;
  }

  std::set<int> induced(int i, SectionId z, const std::set<int>& scope) const {
    std::set<int> out;
    const auto& sections = jobs_.at(z.job);
    for (int q = 1; q <= static_cast<int>(sections.size()); ++q) {
      if (!contains(z.job, z.position, q)) continue;
      const int r = sections[q - 1].resource;
      if (scope.contains(r)) continue;
      for (int k = i + 1; k <= n_; ++k) {
        if (k == z.job) continue;
        for (const auto& s : jobs_.at(k)) {
          if (s.resource == r) out.insert(r);
        }
      }
    }
    return out;
  }

  // Applies every productive maximal section until nothing changes.
  std::set<int> relevant(int i) const {
    std::set<int> result = direct(i);
    for (bool changed = true; changed;) {
      changed = false;
      for (int j = i + 1; j <= n_; ++j) {
        for (int p = 1; p <= static_cast<int>(jobs_.at(j).size()); ++p) {
          if (!maximal({j, p}, result)) continue;
          for (int r : induced(i, {j, p}, result)) changed |= result.insert(r).second;
        }
      }
    }
    return result;
  }

  std::set<int> chain_scope(int i, const ZChain& chain) const {
    std::set<int> base = direct(i);
    std::set<int> out = base;
    for (SectionId z : chain) {
      for (int r : induced(i, z, base)) out.insert(r);
    }
    return out;
  }

  bool admissible_extension(int i, const ZChain& chain, SectionId z) const {
    const int j = z.job;
    const int p = z.position;
    if (j <= i) return false;
    for (SectionId y : chain) {
      if (y.job == j) return false;                   // NBJ
      if (resource(y) == resource(z)) return false;   // NBR
    }
    if (!maximal(z, chain_scope(i, chain))) return false;  // LSM
    // z together with every section of J_j containing it
    std::vector<int> z_or_outer{p};
    for (int s : at(j, p).ancestors) z_or_outer.push_back(s);
    for (SectionId y : chain) {
      if (y.job < j) {  // FHO
        for (int q = 1; q < y.position; ++q) {
          for (int s : z_or_outer) {
            if (at(y.job, q).resource == at(j, s).resource) return false;
          }
        }
      }
      if (y.job > j) {  // FLO
        std::vector<int> y_or_outer{y.position};
        for (int s : at(y.job, y.position).ancestors) y_or_outer.push_back(s);
        for (int o = 1; o < p; ++o) {
          for (int q : y_or_outer) {
            if (at(j, o).resource == at(y.job, q).resource) return false;
          }
        }
      }
    }
    return true;
  }

  bool admissible(int i, const ZChain& chain) const {
    ZChain prefix;
    for (SectionId z : chain) {
      if (!admissible_extension(i, prefix, z)) return false;
      prefix.push_back(z);
    }
    return true;
  }

  Duration duration(const ZChain& chain) const {
    Duration d;
    for (SectionId z : chain) d += at(z.job, z.position).duration;
    return d;
  }

  // Longest admissible chain by exhaustive depth-first enumeration.
  Duration best(int i, ZChain* witness = nullptr) const {
    Duration best_d;
    ZChain chain;
    auto visit = [&](auto&& self) -> void {
      const Duration d = duration(chain);
      if (d > best_d) {
        best_d = d;
        if (witness) *witness = chain;
      }
      for (int j = i + 1; j <= n_; ++j) {
        for (int p = 1; p <= static_cast<int>(jobs_.at(j).size()); ++p) {
          if (!admissible_extension(i, chain, {j, p})) continue;
          chain.push_back({j, p});
          self(self);
          chain.pop_back();
        }
      }
    };
    visit(visit);
    return best_d;
  }

  // Longest section of J_j on resource r.
  Duration longest(int j, int r) const {
    Duration d;
    for (const auto& s : jobs_.at(j)) {
      if (s.resource == r) d = std::max(d, s.duration);
    }
    return d;
  }

 private:
  struct Section {
    int resource;
    Duration duration;
    std::set<int> ancestors;
  };

  const Section& at(int j, int p) const { return jobs_.at(j).at(static_cast<std::size_t>(p - 1)); }

  int n_;
  std::map<int, std::vector<Section>> jobs_;
  std::set<int> all_resources_;
};

// Maximum weight matching of rows to distinct columns, by trying every
// injective row-to-column map (rows may stay unmatched).
template <typename T>
T brute_force_assignment(const std::vector<std::vector<T>>& gain) {
  const std::size_t rows = gain.size();
  const std::size_t cols = rows ? gain[0].size() : 0;
  std::vector<bool> used(cols, false);
  T best{};
  auto visit = [&](auto&& self, std::size_t r, T acc) -> void {
    if (r == rows) {
      best = std::max(best, acc);
      return;
    }
    self(self, r + 1, acc);
    for (std::size_t c = 0; c < cols; ++c) {
      if (used[c]) continue;
      used[c] = true;
      self(self, r + 1, acc + gain[r][c]);
      used[c] = false;
    }
  };
  visit(visit, 0, T{});
  return best;
}

}  // namespace pipblock::testing

#endif  // PIPBLOCK_TESTS_SUPPORT_HPP_
