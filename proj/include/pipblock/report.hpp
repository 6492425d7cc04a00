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

#ifndef PIPBLOCK_REPORT_HPP_
#define PIPBLOCK_REPORT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pipblock/admissibility.hpp"
#include "pipblock/bound.hpp"
#include "pipblock/deadlock.hpp"
#include "pipblock/relevance.hpp"
#include "pipblock/search.hpp"

namespace pipblock {

struct AnalyzeOptions {
  std::optional<int> job;  // all jobs when empty
  bool exact = true;       // run the search when the quick check fails
  bool trace = false;
};

struct JobAnalysis {
  int job = 0;
  BlockingScope scope;
  BoundResult bound;
  QuickCheckResult quick_check;
  std::optional<SearchResult> search;
  // Exact blocking time; empty when only the bound is known.
  std::optional<Duration> blocking_time;
  ZChain witness;
  double wall_ms = 0;
};

struct AnalysisReport {
  DeadlockVerdict deadlock;
  // Empty when the resource order is cyclic: every blocking time is infinite.
  std::vector<JobAnalysis> jobs;
};

// Deadlock check, bound, quick admissibility check, then (if needed and
// `exact`) the search. Jobs are analysed concurrently and reported in
// index order.
AnalysisReport analyze(const TaskSet& ts, const AnalyzeOptions& options = {});

JobAnalysis analyze_job(const TaskSet& ts, int i, const AnalyzeOptions& options);

// Whole values become JSON integers, anything else a double.
nlohmann::json to_json(Duration d);
nlohmann::json to_json(const ZChain& chain);
nlohmann::json to_json(const BlockingScope& scope);
nlohmann::json to_json(const BlockingMatrix& matrix);
nlohmann::json to_json(const BoundResult& bound);
nlohmann::json to_json(const SearchResult& search);
nlohmann::json to_json(const DeadlockVerdict& verdict);
nlohmann::json to_json(const JobAnalysis& job);
nlohmann::json to_json(const AnalysisReport& report);

// Human-readable rendering of the JSON produced by to_json(AnalysisReport).
std::string render_text(const nlohmann::json& report);

std::string render_matrix(const BlockingMatrix& matrix);

}  // namespace pipblock

#endif  // PIPBLOCK_REPORT_HPP_
