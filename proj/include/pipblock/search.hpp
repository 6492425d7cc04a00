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

#ifndef PIPBLOCK_SEARCH_HPP_
#define PIPBLOCK_SEARCH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pipblock/taskset.hpp"

namespace pipblock {

// How Successors avoids generating a chain already represented in the fringe.
enum class DuplicateGuard {
  // Skip z when n.chain + <z> has exactly the section set of some fringe
  // node's chain.
  kSameSet,
  // Skip z when n.chain + <z>, as a set of sections, is a subset of the
  // chain of some fringe node.
  kSectionSubset,
  // Skip z only when n.chain + <z> is an order-preserving subsequence of
  // some fringe node's chain.
  // The two wider guards may discard the only route to an optimal chain.
  kSubsequence,
};

struct SearchOptions {
  DuplicateGuard guard = DuplicateGuard::kSameSet;
  bool record_trace = false;
};

struct SearchNode {
  int id = 0;  // creation order; the root is 0
  ZChain chain;
  ResourceSet chain_resources;
  JobSet chain_jobs;
  ResourceSet remaining_resources;
  JobSet remaining_jobs;
  ResourceSet induced;
  JobSet candidate_jobs;
  Duration g;
  Duration h;

  Duration f() const { return g + h; }
  bool is_leaf() const { return h.is_zero(); }

  // Fringe tie-break keys: later expansions first, then sibling order.
  std::uint64_t batch = 0;
  int sibling = 0;
  // chain sorted by section id, for the duplicate-chain guard
  std::vector<SectionId> section_set;
};

struct TraceEvent {
  enum class Kind { kExpand, kGenerate, kMarkLeaf, kSolution };
  Kind kind;
  int node = 0;
  int parent = -1;
  ZChain chain;
  Duration g;
  Duration h;
};

std::string to_string(const TraceEvent& event);

struct SearchResult {
  Duration blocking_time;
  ZChain witness;
  Duration initial_bound;
  std::size_t nodes_generated = 0;
  std::size_t nodes_expanded = 0;
  // f of every node at the moment it was expanded
  std::vector<Duration> expanded_f;
  std::vector<ZChain> expanded_chains;
  std::vector<TraceEvent> trace;
};

// A* over admissible chains with the Hungarian bound of the remaining jobs
// and resources as heuristic. The task set must outlive the search.
class BlockingTimeSearch {
 public:
  // Throws CyclicTaskSetError for task sets whose resource order is cyclic.
  BlockingTimeSearch(const TaskSet& ts, int i, SearchOptions options = {});

  const SearchNode& root() const { return root_; }

  // Admissible extensions of n, skipping chains already present in the fringe.
  std::vector<SectionId> successors(const SearchNode& n) const;

  // Successor nodes of n. Stops early once a leaf with f equal to f(n) is
  // produced. When n has no successors it is returned alone, marked leaf.
  std::vector<SearchNode> expand(SearchNode n);

  // Fringe contents, first node first.
  const std::vector<SearchNode>& fringe() const { return fringe_; }

  void insert_all(std::vector<SearchNode> nodes);
  SearchNode remove_first();

  // Pops one node. Returns the result once a leaf is popped.
  std::optional<SearchResult> step();
  SearchResult run();

 private:
  SearchNode make_child(const SearchNode& n, SectionId z, int sibling) const;
  bool in_fringe(const ZChain& chain) const;
  static bool before(const SearchNode& a, const SearchNode& b);

  const TaskSet& ts_;
  int target_;
  SearchOptions options_;
  SearchNode root_;
  std::vector<SearchNode> fringe_;
  std::uint64_t next_batch_ = 1;
  int next_id_ = 1;
  SearchResult stats_;
};

// Exact worst-case blocking time of J_i with a witness chain.
SearchResult blocking_time(const TaskSet& ts, int i, SearchOptions options = {});

}  // namespace pipblock

#endif  // PIPBLOCK_SEARCH_HPP_
