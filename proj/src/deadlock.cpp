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

#include "pipblock/deadlock.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

namespace pipblock {

ResourceOrderGraph build_order_graph(const TaskSet& ts) {
  ResourceOrderGraph g;
  g.vertices = ts.resources();
  for (const Job& job : ts.jobs()) {
    for (const CriticalSection& outer : job.sections) {
      for (int q = outer.id.position + 1; q <= outer.subtree_end; ++q) {
        g.edges.emplace(outer.resource, job.sections[q - 1].resource);
      }
    }
  }
  return g;
}

namespace {

using Adjacency = std::map<ResourceId, std::vector<ResourceId>>;

// Returns the SCC id of every vertex.
std::map<ResourceId, int> tarjan(const ResourceSet& vertices, const Adjacency& adj) {
  std::map<ResourceId, int> index, low, comp;
  std::vector<ResourceId> stack;
  std::set<ResourceId> on_stack;
  int counter = 0;
  int components = 0;

  std::function<void(ResourceId)> visit = [&](ResourceId v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    if (auto it = adj.find(v); it != adj.end()) {
      for (ResourceId w : it->second) {
        if (!index.contains(w)) {
          visit(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on_stack.contains(w)) {
          low[v] = std::min(low[v], index[w]);
        }
      }
    }
    if (low[v] == index[v]) {
      ResourceId w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        comp[w] = components;
      } while (w != v);
      ++components;
    }
  };

  for (ResourceId v : vertices) {
    if (!index.contains(v)) visit(v);
  }
  return comp;
}

}  // namespace

DeadlockVerdict check_deadlock_free(const TaskSet& ts) {
  const ResourceOrderGraph g = build_order_graph(ts);
  Adjacency adj;
  for (const auto& [from, to] : g.edges) adj[from].push_back(to);  // sorted by construction

  const auto comp = tarjan(g.vertices, adj);
  std::map<int, int> comp_size;
  for (const auto& [v, c] : comp) ++comp_size[c];

  std::optional<ResourceId> start;
  for (ResourceId v : g.vertices) {
    if (comp_size[comp.at(v)] > 1) {
      start = v;
      break;
    }
  }
  if (!start) return {};

  // Greedy smallest-successor walk inside the start vertex's component,
  // only stepping where the start stays reachable without revisiting.
  const int c = comp.at(*start);
  std::vector<ResourceId> path{*start};
  std::set<ResourceId> used{*start};
  auto reaches_start = [&](ResourceId from) {
    std::vector<ResourceId> todo{from};
    std::set<ResourceId> seen{from};
    while (!todo.empty()) {
      ResourceId v = todo.back();
      todo.pop_back();
      for (ResourceId w : adj[v]) {
        if (w == *start) return true;
        if (comp.at(w) != c || used.contains(w) || seen.contains(w)) continue;
        seen.insert(w);
        todo.push_back(w);
      }
    }
    return false;
  };
  while (true) {
    ResourceId v = path.back();
    const auto& next = adj[v];
    if (std::find(next.begin(), next.end(), *start) != next.end()) {
      path.push_back(*start);
      break;
    }
    for (ResourceId w : next) {
      if (comp.at(w) != c || used.contains(w)) continue;
      if (reaches_start(w)) {
        path.push_back(w);
        used.insert(w);
        break;
      }
    }
  }
  return DeadlockVerdict{false, std::move(path)};
}

std::string to_string(const std::vector<ResourceId>& cycle) {
  std::string out = "(";
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    if (k) out += ", ";
    out += to_string(cycle[k]);
  }
  return out + ")";
}

CyclicTaskSetError::CyclicTaskSetError(std::vector<ResourceId> cycle)
    : std::runtime_error("resource acquisition order is cyclic " + to_string(cycle) +
                         "; blocking time is unbounded"),
      cycle_(std::move(cycle)) {}

void require_deadlock_free(const TaskSet& ts) {
  auto verdict = check_deadlock_free(ts);
  if (!verdict.acyclic) throw CyclicTaskSetError(std::move(verdict.cycle));
}

}  // namespace pipblock
