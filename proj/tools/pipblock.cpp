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

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "pipblock/admissibility.hpp"
#include "pipblock/bound.hpp"
#include "pipblock/deadlock.hpp"
#include "pipblock/oracle.hpp"
#include "pipblock/relevance.hpp"
#include "pipblock/report.hpp"
#include "pipblock/search.hpp"
#include "pipblock/taskset.hpp"

namespace {

using namespace pipblock;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCyclic = 2;
constexpr int kExitOracleLimit = 3;

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

TaskSet load(const std::string& path) {
  std::vector<std::string> warnings;
  TaskSet ts = parse_taskset(read_input(path), &warnings);
  for (const auto& w : warnings) std::cerr << path << ": warning: " << w << '\n';
  return ts;
}

std::vector<int> targets(const TaskSet& ts, int job) {
  if (job > 0) {
    ts.check_job_index(job);
    return {job};
  }
  std::vector<int> all;
  for (int i = 1; i <= ts.job_count(); ++i) all.push_back(i);
  return all;
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Worst-case blocking time analysis for nested critical sections"};
  app.require_subcommand(1);

  std::string file;
  int job = 0;
  bool json = false;
  bool trace = false;

  auto* analyze_cmd = app.add_subcommand("analyze", "Full analysis: deadlock, bound, exact blocking time");
  bool bound_only = false;
  analyze_cmd->add_option("file", file, "Task set file, - for stdin")->required();
  analyze_cmd->add_option("--job", job, "Analyse only J_i");
  analyze_cmd->add_flag("--bound-only", bound_only, "Skip the search when the quick check fails");
  analyze_cmd->add_flag("--json", json, "JSON output");
  analyze_cmd->add_flag("--trace", trace, "Include the search trace");

  auto* deadlock_cmd = app.add_subcommand("check-deadlock", "Check the resource order for cycles");
  deadlock_cmd->add_option("file", file)->required();
  deadlock_cmd->add_flag("--json", json);

  auto* scope_cmd = app.add_subcommand("scope", "Direct and relevant blocking resources and jobs");
  bool show_fixpoint = false;
  scope_cmd->add_option("file", file)->required();
  scope_cmd->add_option("--job", job)->required();
  scope_cmd->add_flag("--fixpoint", show_fixpoint, "Print the fixpoint iterates");
  scope_cmd->add_flag("--json", json);

  auto* bound_cmd = app.add_subcommand("bound", "Hungarian upper bound on the blocking time");
  bound_cmd->add_option("file", file)->required();
  bound_cmd->add_option("--job", job);
  bound_cmd->add_flag("--json", json);

  auto* exact_cmd = app.add_subcommand("blocking-time", "Exact blocking time by informed search");
  std::string guard = "same-set";
  exact_cmd->add_option("file", file)->required();
  exact_cmd->add_option("--job", job);
  exact_cmd->add_option("--guard", guard, "Duplicate guard: same-set, subset or subsequence")
      ->check(CLI::IsMember({"same-set", "subset", "subsequence"}));
  exact_cmd->add_flag("--trace", trace);
  exact_cmd->add_flag("--json", json);

  auto* chain_cmd = app.add_subcommand("check-chain", "Check admissibility of a chain");
  std::string chain_text;
  chain_cmd->add_option("file", file)->required();
  chain_cmd->add_option("--job", job)->required();
  chain_cmd->add_option("--chain", chain_text, "e.g. \"z2,1 z3,2 z4,1\"")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive enumeration of admissible chains");
  std::uint64_t limit = OracleOptions{}.limit;
  oracle_cmd->add_option("file", file)->required();
  oracle_cmd->add_option("--job", job)->required();
  oracle_cmd->add_option("--limit", limit, "Largest uninformed search space to enumerate");
  oracle_cmd->add_flag("--json", json);

  auto* gen_cmd = app.add_subcommand("gen", "Generate task sets");
  gen_cmd->require_subcommand(1);
  auto* anti_cmd = gen_cmd->add_subcommand("antidiagonal", "Anti-diagonal family");
  int n = 0, i = 0;
  std::string delta = "10", epsilon = "1";
  anti_cmd->add_option("--n", n)->required();
  anti_cmd->add_option("--i", i)->required();
  anti_cmd->add_option("--delta", delta);
  anti_cmd->add_option("--epsilon", epsilon);
  auto* random_cmd = gen_cmd->add_subcommand("random", "Random deadlock-free task set");
  std::uint64_t seed = 0;
  RandomLimits limits;
  random_cmd->add_option("--seed", seed)->required();
  random_cmd->add_option("--jobs", limits.jobs);
  random_cmd->add_option("--resources", limits.resources);
  random_cmd->add_option("--sections", limits.sections_per_job);
  random_cmd->add_option("--depth", limits.nesting_depth);
  random_cmd->add_option("--max-duration", limits.max_duration);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze_cmd) {
      const TaskSet ts = load(file);
      AnalyzeOptions options;
      if (job > 0) options.job = job;
      options.exact = !bound_only;
      options.trace = trace;
      const auto report = to_json(analyze(ts, options));
      if (json) print_json(report);
      else std::cout << render_text(report);
      return report["deadlock"]["acyclic"].get<bool>() ? kExitOk : kExitCyclic;
    }

    if (*deadlock_cmd) {
      const TaskSet ts = load(file);
      const DeadlockVerdict verdict = check_deadlock_free(ts);
      if (json) print_json(to_json(verdict));
      else if (verdict.acyclic) std::cout << "acyclic\n";
      else std::cout << "cyclic " << to_string(verdict.cycle) << '\n';
      return verdict.acyclic ? kExitOk : kExitCyclic;
    }

    if (*scope_cmd) {
      const TaskSet ts = load(file);
      const BlockingScope scope = blocking_scope(ts, job);
      if (json) {
        print_json(to_json(scope));
        return kExitOk;
      }
      std::cout << "R^i   = " << to_string(scope.direct_resources) << '\n'
                << "G^i   = " << to_string(scope.direct_jobs) << '\n'
                << "R_N^i = " << to_string(scope.relevant_resources) << '\n'
                << "G_N^i = " << to_string(scope.relevant_jobs) << '\n';
      if (show_fixpoint) {
        const FixpointTrace fp = trace_relevant_resources(ts, job);
        for (const auto& step : fp.steps) {
          std::cout << "  in(" << to_string(step.section) << ") = " << to_string(step.induced)
                    << " -> " << to_string(step.result) << '\n';
        }
      }
      return kExitOk;
    }

    if (*bound_cmd) {
      const TaskSet ts = load(file);
      require_deadlock_free(ts);
      nlohmann::json out = nlohmann::json::array();
      for (int t : targets(ts, job)) {
        const BoundResult b = job_bound(ts, t);
        if (json) {
          auto entry = to_json(b);
          entry["job"] = t;
          out.push_back(std::move(entry));
          continue;
        }
        std::cout << "J" << t << ": h = " << b.h << '\n' << render_matrix(b.matrix);
      }
      if (json) print_json(out);
      return kExitOk;
    }

    if (*exact_cmd) {
      const TaskSet ts = load(file);
      SearchOptions options;
      if (guard == "subset") options.guard = DuplicateGuard::kSectionSubset;
      if (guard == "subsequence") options.guard = DuplicateGuard::kSubsequence;
      options.record_trace = trace;
      nlohmann::json out = nlohmann::json::array();
      for (int t : targets(ts, job)) {
        const SearchResult r = blocking_time(ts, t, options);
        if (json) {
          auto entry = to_json(r);
          entry["job"] = t;
          out.push_back(std::move(entry));
          continue;
        }
        std::cout << "B_" << t << " = " << r.blocking_time << "  witness "
                  << to_string(r.witness) << "  (" << r.nodes_generated << " generated, "
                  << r.nodes_expanded << " expanded)\n";
        for (const auto& e : r.trace) std::cout << "  " << to_string(e) << '\n';
      }
      if (json) print_json(out);
      return kExitOk;
    }

    if (*chain_cmd) {
      const TaskSet ts = load(file);
      const ZChain chain = parse_chain(chain_text);
      const AdmissibilityVerdict v = is_admissible_chain(ts, job, chain);
      if (v.admissible) {
        std::cout << "admissible " << to_string(chain) << " duration "
                  << chain_duration(ts, chain) << '\n';
      } else {
        std::cout << "not admissible: " << to_string(*v.failed_condition);
        if (v.failed_at) std::cout << " at element " << *v.failed_at + 1;
        if (v.witness) {
          std::cout << " (" << to_string(v.witness->first) << ", " << to_string(v.witness->second)
                    << ")";
        }
        std::cout << '\n';
      }
      return kExitOk;
    }

    if (*oracle_cmd) {
      const TaskSet ts = load(file);
      const OracleResult r = brute_force_blocking_time(ts, job, {limit});
      if (json) {
        nlohmann::json chains = nlohmann::json::array();
        for (const auto& c : r.best_chains) chains.push_back(to_json(c));
        print_json({{"job", job},
                    {"blocking_time", to_json(r.best_duration)},
                    {"best_chains", chains},
                    {"chains_enumerated", r.chains_enumerated},
                    {"search_space_size", r.search_space_size}});
        return kExitOk;
      }
      std::cout << "B_" << job << " = " << r.best_duration << "  (" << r.chains_enumerated
                << " chains enumerated, search space " << r.search_space_size << ")\n";
      for (const auto& c : r.best_chains) std::cout << "  " << to_string(c) << '\n';
      return kExitOk;
    }

    if (*anti_cmd) {
      std::cout << serialize(generate_antidiagonal_family(n, i, Duration::parse(delta),
                                                          Duration::parse(epsilon)));
      return kExitOk;
    }

    if (*random_cmd) {
      std::cout << serialize(random_taskset(seed, limits));
      return kExitOk;
    }
  } catch (const ParseError& e) {
    std::cerr << file << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const CyclicTaskSetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCyclic;
  } catch (const OracleLimitExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOracleLimit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
