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

#include "pipblock/report.hpp"

#include <chrono>
#include <future>
#include <iomanip>
#include <sstream>

namespace pipblock {

JobAnalysis analyze_job(const TaskSet& ts, int i, const AnalyzeOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  JobAnalysis a;
  a.job = i;
  a.scope = blocking_scope(ts, i);
  a.bound = hungarian_bound(ts, a.scope.relevant_jobs, a.scope.relevant_resources);
  a.quick_check = quick_admissibility_check(ts, i, a.bound.matrix, a.bound.assignment, a.bound.h);
  if (a.quick_check.admissible) {
    a.blocking_time = a.bound.h;
    a.witness = a.quick_check.chain;
  } else if (options.exact) {
    SearchOptions search_options;
    search_options.record_trace = options.trace;
    a.search = blocking_time(ts, i, search_options);
    a.blocking_time = a.search->blocking_time;
    a.witness = a.search->witness;
  }
  a.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                  .count();
  return a;
}

AnalysisReport analyze(const TaskSet& ts, const AnalyzeOptions& options) {
  AnalysisReport report;
  report.deadlock = check_deadlock_free(ts);
  if (!report.deadlock.acyclic) return report;

  std::vector<int> targets;
  if (options.job) {
    ts.check_job_index(*options.job);
    targets.push_back(*options.job);
  } else {
    for (int i = 1; i <= ts.job_count(); ++i) targets.push_back(i);
  }
  std::vector<std::future<JobAnalysis>> pending;
  for (int i : targets) {
    pending.push_back(std::async(std::launch::async, [&ts, i, &options] {
      return analyze_job(ts, i, options);
    }));
  }
  for (auto& f : pending) report.jobs.push_back(f.get());
  return report;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(Duration d) {
  if (d.ticks() % Duration::kTicksPerUnit == 0) return d.ticks() / Duration::kTicksPerUnit;
  return d.to_double();
}

namespace {

nlohmann::json resources_json(const ResourceSet& rs) {
  auto out = nlohmann::json::array();
  for (ResourceId r : rs) out.push_back(to_string(r));
  return out;
}

nlohmann::json jobs_json(const JobSet& js) {
  auto out = nlohmann::json::array();
  for (int j : js) out.push_back("J" + std::to_string(j));
  return out;
}

}  // namespace

nlohmann::json to_json(const ZChain& chain) {
  auto out = nlohmann::json::array();
  for (SectionId z : chain) out.push_back(to_string(z));
  return out;
}

nlohmann::json to_json(const BlockingScope& scope) {
  return {{"job", scope.target},
          {"direct_resources", resources_json(scope.direct_resources)},
          {"direct_jobs", jobs_json(scope.direct_jobs)},
          {"relevant_resources", resources_json(scope.relevant_resources)},
          {"relevant_jobs", jobs_json(scope.relevant_jobs)}};
}

nlohmann::json to_json(const BlockingMatrix& matrix) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < matrix.jobs.size(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < matrix.resources.size(); ++c) {
      row.push_back(to_json(matrix.cells(r, c)));
    }
    rows.push_back(std::move(row));
  }
  nlohmann::json jobs = nlohmann::json::array();
  for (int j : matrix.jobs) jobs.push_back("J" + std::to_string(j));
  nlohmann::json resources = nlohmann::json::array();
  for (ResourceId r : matrix.resources) resources.push_back(to_string(r));
  return {{"jobs", jobs}, {"resources", resources}, {"cells", rows}};
}

nlohmann::json to_json(const BoundResult& bound) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& a : bound.assignment) {
    pairs.push_back({{"job", "J" + std::to_string(a.job)},
                     {"resource", to_string(a.resource)},
                     {"duration", to_json(a.duration)}});
  }
  return {{"h", to_json(bound.h)}, {"assignment", pairs}, {"matrix", to_json(bound.matrix)}};
}

nlohmann::json to_json(const SearchResult& search) {
  nlohmann::json out = {{"blocking_time", to_json(search.blocking_time)},
                        {"witness", to_json(search.witness)},
                        {"initial_bound", to_json(search.initial_bound)},
                        {"nodes_generated", search.nodes_generated},
                        {"nodes_expanded", search.nodes_expanded}};
  if (!search.trace.empty()) {
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& e : search.trace) trace.push_back(to_string(e));
    out["trace"] = std::move(trace);
  }
  return out;
}

nlohmann::json to_json(const DeadlockVerdict& verdict) {
  nlohmann::json cycle = nlohmann::json::array();
  for (ResourceId r : verdict.cycle) cycle.push_back(to_string(r));
  return {{"acyclic", verdict.acyclic}, {"cycle", cycle}};
}

nlohmann::json to_json(const JobAnalysis& a) {
  nlohmann::json out = {
      {"job", a.job},
      {"scope", to_json(a.scope)},
      {"bound", to_json(a.bound)},
      {"quick_check",
       {{"admissible", a.quick_check.admissible},
        {"chain", to_json(a.quick_check.chain)},
        {"duration", to_json(a.quick_check.duration)},
        {"failed_condition", a.quick_check.verdict.failed_condition
                                 ? nlohmann::json(to_string(*a.quick_check.verdict.failed_condition))
                                 : nlohmann::json()}}},
      {"blocking_time", a.blocking_time ? to_json(*a.blocking_time) : nlohmann::json()},
      {"witness", to_json(a.witness)},
      {"search_skipped", !a.search.has_value()},
      {"wall_ms", a.wall_ms}};
  if (a.search) out["search"] = to_json(*a.search);
  return out;
}

nlohmann::json to_json(const AnalysisReport& report) {
  nlohmann::json out = {{"deadlock", to_json(report.deadlock)}};
  if (!report.deadlock.acyclic) {
    out["blocking_time"] = "infinite";
    out["jobs"] = nlohmann::json::array();
    return out;
  }
  nlohmann::json jobs = nlohmann::json::array();
  for (const auto& a : report.jobs) jobs.push_back(to_json(a));
  out["jobs"] = std::move(jobs);
  return out;
}

// ---------------------------------------------------------------------------
// Text

namespace {

std::string join_strings(const nlohmann::json& array, std::string_view sep = ", ") {
  std::string out;
  for (std::size_t k = 0; k < array.size(); ++k) {
    if (k) out += sep;
    out += array[k].is_string() ? array[k].get<std::string>() : array[k].dump();
  }
  return out;
}

std::string matrix_text(const nlohmann::json& m) {
  std::ostringstream os;
  os << "      " ;
  for (const auto& r : m["resources"]) os << std::setw(6) << r.get<std::string>();
  os << '\n';
  for (std::size_t row = 0; row < m["jobs"].size(); ++row) {
    os << "    " << std::setw(2) << m["jobs"][row].get<std::string>();
    for (const auto& cell : m["cells"][row]) os << std::setw(6) << cell.dump();
    os << '\n';
  }
  return os.str();
}

}  // namespace

std::string render_matrix(const BlockingMatrix& matrix) { return matrix_text(to_json(matrix)); }

std::string render_text(const nlohmann::json& report) {
  std::ostringstream os;
  const auto& deadlock = report["deadlock"];
  if (!deadlock["acyclic"].get<bool>()) {
    os << "deadlock: resource order is cyclic (" << join_strings(deadlock["cycle"]) << ")\n";
    os << "blocking time: infinite\n";
    return os.str();
  }
  os << "deadlock: acyclic resource order\n";
  for (const auto& job : report["jobs"]) {
    const auto& scope = job["scope"];
    const auto& bound = job["bound"];
    const auto& quick = job["quick_check"];
    os << "\nJ" << job["job"].get<int>() << '\n';
    os << "  R^i   = {" << join_strings(scope["direct_resources"]) << "}\n";
    os << "  G^i   = {" << join_strings(scope["direct_jobs"]) << "}\n";
    os << "  R_N^i = {" << join_strings(scope["relevant_resources"]) << "}\n";
    os << "  G_N^i = {" << join_strings(scope["relevant_jobs"]) << "}\n";
    os << "  bound h = " << bound["h"].dump() << "  H = {";
    for (std::size_t k = 0; k < bound["assignment"].size(); ++k) {
      const auto& pair = bound["assignment"][k];
      if (k) os << ", ";
      os << '(' << pair["job"].get<std::string>() << ',' << pair["resource"].get<std::string>()
         << ')';
    }
    os << "}\n";
    os << "  quick check: " << (quick["admissible"].get<bool>() ? "admissible" : "failed");
    if (!quick["failed_condition"].is_null()) {
      os << " (" << quick["failed_condition"].get<std::string>() << ")";
    }
    os << '\n';
    if (job["blocking_time"].is_null()) {
      os << "  B = unknown (bound only, B <= " << bound["h"].dump() << ")\n";
    } else {
      os << "  B = " << job["blocking_time"].dump() << "  witness <"
         << join_strings(job["witness"]) << ">\n";
    }
    if (job.contains("search")) {
      const auto& s = job["search"];
      os << "  search: " << s["nodes_generated"].dump() << " nodes generated, "
         << s["nodes_expanded"].dump() << " expanded\n";
      if (s.contains("trace")) {
        for (const auto& line : s["trace"]) os << "    " << line.get<std::string>() << '\n';
      }
    } else {
      os << "  search: skipped\n";
    }
  }
  return os.str();
}

}  // namespace pipblock
