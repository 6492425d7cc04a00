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

#include "pipblock/bound.hpp"

#include <algorithm>
#include <stdexcept>

#include "pipblock/deadlock.hpp"
#include "pipblock/relevance.hpp"

namespace pipblock {

Duration BlockingMatrix::at(int job, ResourceId resource) const {
  auto row = std::find(jobs.begin(), jobs.end(), job);
  auto col = std::find(resources.begin(), resources.end(), resource);
  if (row == jobs.end() || col == resources.end()) {
    throw std::out_of_range("J" + std::to_string(job) + "/" + to_string(resource) +
                            " is not a cell of the blocking matrix");
  }
  return cells(static_cast<std::size_t>(row - jobs.begin()),
               static_cast<std::size_t>(col - resources.begin()));
}

BlockingMatrix blocking_time_matrix(const TaskSet& ts, const JobSet& jobs,
                                    const ResourceSet& resources) {
  BlockingMatrix d;
  d.jobs.assign(jobs.begin(), jobs.end());
  d.resources.assign(resources.begin(), resources.end());
  d.cells = DenseMatrix<Duration>(d.jobs.size(), d.resources.size());
  for (std::size_t r = 0; r < d.jobs.size(); ++r) {
    for (const auto& cs : ts.job(d.jobs[r]).sections) {
      auto col = std::find(d.resources.begin(), d.resources.end(), cs.resource);
      if (col == d.resources.end()) continue;
      auto& cell = d.cells(r, static_cast<std::size_t>(col - d.resources.begin()));
      if (cell < cs.duration) cell = cs.duration;
    }
  }
  return d;
}

namespace {

DenseMatrix<Duration> submatrix(const DenseMatrix<Duration>& m, const std::vector<std::size_t>& rows,
                                const std::vector<std::size_t>& cols) {
  DenseMatrix<Duration> out(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = m(rows[r], cols[c]);
  }
  return out;
}

}  // namespace

BoundResult hungarian_bound(const TaskSet& ts, const JobSet& jobs, const ResourceSet& resources) {
  BoundResult result;
  result.matrix = blocking_time_matrix(ts, jobs, resources);
  const auto& d = result.matrix.cells;
  result.h = max_assignment_value(d);

  // Fix pairs greedily in (job, resource) order, keeping a pair only if the
  // rest of the matrix can still reach the optimum.
  std::vector<std::size_t> rows(d.rows()), cols(d.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) rows[k] = k;
  for (std::size_t k = 0; k < cols.size(); ++k) cols[k] = k;
  Duration remaining = result.h;
  while (!rows.empty() && !cols.empty() && remaining > Duration::zero()) {
    const std::size_t r = rows.front();
    std::vector<std::size_t> other_rows(rows.begin() + 1, rows.end());
    bool assigned = false;
    for (std::size_t ci = 0; ci < cols.size() && !assigned; ++ci) {
      const Duration gain = d(r, cols[ci]);
      if (gain.is_zero()) continue;
      std::vector<std::size_t> other_cols = cols;
      other_cols.erase(other_cols.begin() + static_cast<std::ptrdiff_t>(ci));
      const Duration rest = max_assignment_value(submatrix(d, other_rows, other_cols));
      if (gain + rest == remaining) {
        result.assignment.push_back({result.matrix.jobs[r], result.matrix.resources[cols[ci]], gain});
        remaining = rest;
        cols = std::move(other_cols);
        assigned = true;
      }
    }
    rows = std::move(other_rows);
  }
  return result;
}

Duration hungarian_value(const TaskSet& ts, const JobSet& jobs, const ResourceSet& resources) {
  return max_assignment_value(blocking_time_matrix(ts, jobs, resources).cells);
}

BoundResult job_bound(const TaskSet& ts, int i) {
  ts.check_job_index(i);
  const ResourceSet resources = relevant_resources(ts, i);
  return hungarian_bound(ts, jobs_using(ts, i, resources), resources);
}

std::map<int, BoundResult> per_job_bounds(const TaskSet& ts) {
  require_deadlock_free(ts);
  std::map<int, BoundResult> out;
  for (int i = 1; i <= ts.job_count(); ++i) out.emplace(i, job_bound(ts, i));
  return out;
}

}  // namespace pipblock
