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

#include "pipblock/search.hpp"

#include <algorithm>
#include <sstream>

#include "pipblock/bound.hpp"
#include "pipblock/deadlock.hpp"
#include "pipblock/relevance.hpp"

namespace pipblock {

std::string to_string(const TraceEvent& e) {
  std::ostringstream os;
  switch (e.kind) {
    case TraceEvent::Kind::kExpand: os << "expand   "; break;
    case TraceEvent::Kind::kGenerate: os << "generate "; break;
    case TraceEvent::Kind::kMarkLeaf: os << "leaf     "; break;
    case TraceEvent::Kind::kSolution: os << "solution "; break;
  }
  os << 'n' << e.node;
  if (e.parent >= 0) os << " <- n" << e.parent;
  os << ' ' << to_string(e.chain) << " g=" << e.g << " h=" << e.h << " f=" << (e.g + e.h);
  return os.str();
}

BlockingTimeSearch::BlockingTimeSearch(const TaskSet& ts, int i, SearchOptions options)
    : ts_(ts), target_(i), options_(options) {
  ts.check_job_index(i);
  require_deadlock_free(ts);
  const ResourceSet relevant = relevant_resources(ts, i);
  root_.remaining_resources = relevant;
  root_.remaining_jobs = jobs_using(ts, i, relevant);
  root_.induced = direct_blocking_resources(ts, i);
  root_.candidate_jobs = jobs_using(ts, i, root_.induced);
  root_.h = hungarian_value(ts, root_.remaining_jobs, root_.remaining_resources);
  stats_.initial_bound = root_.h;
  stats_.nodes_generated = 1;
  fringe_.push_back(root_);
}

bool BlockingTimeSearch::before(const SearchNode& a, const SearchNode& b) {
  if (a.f() != b.f()) return a.f() > b.f();
  if (a.is_leaf() != b.is_leaf()) return a.is_leaf();
  if (a.batch != b.batch) return a.batch > b.batch;
  return a.sibling < b.sibling;
}

bool BlockingTimeSearch::in_fringe(const ZChain& chain) const {
  if (options_.guard != DuplicateGuard::kSubsequence) {
    std::vector<SectionId> wanted = chain;
    std::sort(wanted.begin(), wanted.end());
    if (options_.guard == DuplicateGuard::kSameSet) {
      return std::any_of(fringe_.begin(), fringe_.end(),
                         [&](const SearchNode& other) { return other.section_set == wanted; });
    }
    return std::any_of(fringe_.begin(), fringe_.end(), [&](const SearchNode& other) {
      return std::includes(other.section_set.begin(), other.section_set.end(), wanted.begin(),
                           wanted.end());
    });
  }
  return std::any_of(fringe_.begin(), fringe_.end(), [&](const SearchNode& other) {
    auto it = other.chain.begin();
    for (SectionId z : chain) {
      it = std::find(it, other.chain.end(), z);
      if (it == other.chain.end()) return false;
      ++it;
    }
    return true;
  });
}

std::vector<SectionId> BlockingTimeSearch::successors(const SearchNode& n) const {
  std::vector<SectionId> extensions;
  for (int j : n.candidate_jobs) {  // NBJ
    const auto in_scope = maximal_sequence(ts_, j, n.induced);
    const auto taken = maximal_sequence(ts_, j, n.chain_resources);
    for (SectionId z : in_scope) {  // NBR, LSM
      if (std::find(taken.begin(), taken.end(), z) != taken.end()) continue;

      ZChain extended = n.chain;
      extended.push_back(z);
      if (in_fringe(extended)) continue;

      const ResourceSet held = ts_.held_resources(z);
      bool obstructed = false;
      for (SectionId member : n.chain) {  // FHO
        if (member.job >= j) continue;
        const auto& sections = ts_.job(member.job).sections;
        for (int q = 1; q < member.position && !obstructed; ++q) {
          obstructed = held.contains(sections[q - 1].resource);
        }
        if (obstructed) break;
      }
      if (obstructed) continue;

      const auto& own = ts_.job(j).sections;
      for (SectionId member : n.chain) {  // FLO
        if (member.job <= j) continue;
        const ResourceSet member_holds = ts_.held_resources(member);
        for (int o = 1; o < z.position && !obstructed; ++o) {
          obstructed = member_holds.contains(own[o - 1].resource);
        }
        if (obstructed) break;
      }
      if (obstructed) continue;

      extensions.push_back(z);
    }
  }
  return extensions;
}

SearchNode BlockingTimeSearch::make_child(const SearchNode& n, SectionId z, int sibling) const {
  const CriticalSection& cs = ts_.section(z);
  SearchNode s;
  s.chain = n.chain;
  s.chain.push_back(z);
  s.chain_resources = n.chain_resources;
  s.chain_resources.insert(cs.resource);
  s.chain_jobs = n.chain_jobs;
  s.chain_jobs.insert(z.job);
  s.remaining_resources = n.remaining_resources;
  s.remaining_resources.erase(cs.resource);
  s.remaining_jobs = n.remaining_jobs;
  s.remaining_jobs.erase(z.job);
  s.induced = n.induced;
  const ResourceSet induced = induced_resources(ts_, target_, z, n.induced);
  s.induced.insert(induced.begin(), induced.end());
  for (int k : s.remaining_jobs) {
    const auto in_scope = maximal_sequence(ts_, k, s.induced);
    const auto taken = maximal_sequence(ts_, k, s.chain_resources);
    const bool fresh = std::any_of(in_scope.begin(), in_scope.end(), [&](SectionId x) {
      return std::find(taken.begin(), taken.end(), x) == taken.end();
    });
    if (fresh) s.candidate_jobs.insert(k);
  }
  s.g = n.g + cs.duration;
  s.h = s.candidate_jobs.empty()
            ? Duration::zero()
            : hungarian_value(ts_, s.remaining_jobs, s.remaining_resources);
  s.sibling = sibling;
  s.section_set = s.chain;
  std::sort(s.section_set.begin(), s.section_set.end());
  return s;
}

std::vector<SearchNode> BlockingTimeSearch::expand(SearchNode n) {
  const std::uint64_t batch = next_batch_++;
  std::vector<SearchNode> out;
  if (options_.record_trace) {
    stats_.trace.push_back({TraceEvent::Kind::kExpand, n.id, -1, n.chain, n.g, n.h});
  }
  for (SectionId z : successors(n)) {
    SearchNode s = make_child(n, z, static_cast<int>(out.size()));
    s.id = next_id_++;
    s.batch = batch;
    ++stats_.nodes_generated;
    if (options_.record_trace) {
      stats_.trace.push_back({TraceEvent::Kind::kGenerate, s.id, n.id, s.chain, s.g, s.h});
    }
    const bool done = s.is_leaf() && s.f() == n.f();
    out.push_back(std::move(s));
    if (done) return out;
  }
  if (out.empty()) {
    n.h = Duration::zero();
    n.batch = batch;
    n.sibling = 0;
    if (options_.record_trace) {
      stats_.trace.push_back({TraceEvent::Kind::kMarkLeaf, n.id, -1, n.chain, n.g, n.h});
    }
    out.push_back(std::move(n));
  }
  return out;
}

void BlockingTimeSearch::insert_all(std::vector<SearchNode> nodes) {
  for (auto& node : nodes) {
    if (node.section_set.empty() && !node.chain.empty()) {
      node.section_set = node.chain;
      std::sort(node.section_set.begin(), node.section_set.end());
    }
    auto pos = std::upper_bound(fringe_.begin(), fringe_.end(), node, before);
    fringe_.insert(pos, std::move(node));
  }
}

SearchNode BlockingTimeSearch::remove_first() {
  SearchNode n = std::move(fringe_.front());
  fringe_.erase(fringe_.begin());
  return n;
}

std::optional<SearchResult> BlockingTimeSearch::step() {
  SearchNode n = remove_first();
  if (n.is_leaf()) {
    SearchResult result = stats_;
    result.blocking_time = n.g;
    result.witness = n.chain;
    if (options_.record_trace) {
      result.trace.push_back({TraceEvent::Kind::kSolution, n.id, -1, n.chain, n.g, n.h});
    }
    return result;
  }
  ++stats_.nodes_expanded;
  stats_.expanded_f.push_back(n.f());
  stats_.expanded_chains.push_back(n.chain);
  insert_all(expand(std::move(n)));
  return std::nullopt;
}

SearchResult BlockingTimeSearch::run() {
  while (true) {
    if (auto result = step()) return *std::move(result);
  }
}

SearchResult blocking_time(const TaskSet& ts, int i, SearchOptions options) {
  BlockingTimeSearch search(ts, i, options);
  return search.run();
}

}  // namespace pipblock
