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

#ifndef PIPBLOCK_ADMISSIBILITY_HPP_
#define PIPBLOCK_ADMISSIBILITY_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pipblock/bound.hpp"
#include "pipblock/taskset.hpp"

namespace pipblock {

enum class Condition {
  kNovelJob,                 // NBJ
  kNovelResource,            // NBR
  kLimitedScopeMaximality,   // LSM
  kHigherPriorityObstruction,  // FHO
  kLowerPriorityObstruction,   // FLO
  kInductionCompatibility,
  kDurationMismatch,
};

// Short tag: "NBJ", "NBR", "LSM", "FHO", "FLO", "induction-compatibility",
// "duration-mismatch".
std::string to_string(Condition c);

struct AdmissibilityVerdict {
  bool admissible = true;
  std::optional<Condition> failed_condition;
  // Conflicting pair of sections, when the failure has one.
  std::optional<std::pair<SectionId, SectionId>> witness;
  // Chain index of the offending element (chain checks only).
  std::optional<std::size_t> failed_at;

  static AdmissibilityVerdict ok() { return {}; }
  static AdmissibilityVerdict fail(Condition c,
                                   std::optional<std::pair<SectionId, SectionId>> w = {}) {
    return {false, c, w, std::nullopt};
  }
};

// Whether z is induction compatible within chain + <z>: its resource can
// block J_i directly, or it is nested inside another compatible element's
// job. Throws std::invalid_argument unless the elements belong to distinct
// jobs and use distinct resources.
bool is_induction_compatible(const TaskSet& ts, int i, const ZChain& chain, SectionId z);

// Checks NBJ, NBR, LSM, FHO and FLO in that order and reports the first
// violation. Throws std::invalid_argument if `chain` is not admissible.
AdmissibilityVerdict is_admissible_extension(const TaskSet& ts, int i, const ZChain& chain,
                                             SectionId z);

// Same as is_admissible_extension but trusts that `chain` is admissible.
AdmissibilityVerdict check_extension(const TaskSet& ts, int i, const ZChain& chain, SectionId z);

// Admissibility of every prefix extension in chain order.
AdmissibilityVerdict is_admissible_chain(const TaskSet& ts, int i, const ZChain& chain);

struct QuickCheckResult {
  bool admissible = false;
  // Chain assembled from the assignment pairs, in construction order.
  ZChain chain;
  Duration duration;
  AdmissibilityVerdict verdict;
};

// Polynomial check that the bound h is realised by an admissible chain.
// Builds a chain from the assignment (leftmost longest section per pair,
// growing the induction scope from R^i), rejects it if it falls short of h,
// then scans jobs by ascending priority for lower-priority obstruction.
// Sound but not complete: false does not mean the bound is unattainable.
QuickCheckResult quick_admissibility_check(const TaskSet& ts, int i, const BlockingMatrix& d,
                                           const std::vector<Assignment>& assignment, Duration h);

}  // namespace pipblock

#endif  // PIPBLOCK_ADMISSIBILITY_HPP_
