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

#ifndef PIPBLOCK_TASKSET_HPP_
#define PIPBLOCK_TASKSET_HPP_

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pipblock/duration.hpp"

namespace pipblock {

// A shared resource R_k. Each resource is guarded by exactly one binary
// semaphore, so the resource index also names the semaphore.
struct ResourceId {
  int index = 0;
  constexpr auto operator<=>(const ResourceId&) const = default;
};

std::string to_string(ResourceId r);

// Identity of a critical section: the p-th wait operation of job j.
struct SectionId {
  int job = 0;
  int position = 0;
  constexpr auto operator<=>(const SectionId&) const = default;
};

// Renders "z<j>,<p>".
std::string to_string(SectionId z);

// Parses "z<j>,<p>" (the leading 'z' is optional).
SectionId parse_section_id(std::string_view text);

using ResourceSet = std::set<ResourceId>;
using JobSet = std::set<int>;

// Ordered sequence of critical sections; a candidate blocking scenario.
using ZChain = std::vector<SectionId>;

std::string to_string(const ZChain& chain);
std::string to_string(const ResourceSet& resources);
std::string to_string(const JobSet& jobs);

struct CriticalSection {
  SectionId id;
  ResourceId resource;
  Duration duration;
  // Position of the immediately enclosing section of the same job.
  std::optional<int> parent;
  // Last position nested (transitively) inside this section. Positions
  // follow wait-operation order, so the nested sections are exactly
  // (id.position, subtree_end].
  int subtree_end = 0;
};

struct Job {
  int index = 0;
  std::vector<CriticalSection> sections;
};

// Tree form of one critical section, used to build task sets.
struct SectionSpec {
  ResourceId resource;
  Duration duration;
  std::vector<SectionSpec> nested;
};

class TaskSetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public TaskSetError {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class InvalidTaskSetError : public TaskSetError {
 public:
  using TaskSetError::TaskSetError;
};

// An application: jobs J_1..J_n in descending priority order together with
// their properly nested critical sections. Immutable after construction.
class TaskSet {
 public:
  // Builds from per-job section trees; jobs[0] becomes J_1. Throws
  // InvalidTaskSetError if a resource is re-locked inside a section that
  // already holds it or the job list is empty.
  static TaskSet from_specs(const std::vector<std::vector<SectionSpec>>& jobs);

  // Validates an already flattened description.
  explicit TaskSet(std::vector<Job> jobs);

  int job_count() const { return static_cast<int>(jobs_.size()); }
  std::span<const Job> jobs() const { return jobs_; }
  const Job& job(int j) const;
  const CriticalSection& section(SectionId z) const;
  bool has_section(SectionId z) const;
  const ResourceSet& resources() const { return resources_; }
  std::size_t section_count() const;

  // Strict containment: `outer` entirely contains `inner`.
  bool contains(SectionId outer, SectionId inner) const;

  // Sections of z's job that strictly contain z, innermost first.
  std::vector<SectionId> enclosing(SectionId z) const;

  // Resources of z and of every section of z's job that contains it.
  ResourceSet held_resources(SectionId z) const;

  void check_job_index(int j) const;

 private:
  std::vector<Job> jobs_;
  ResourceSet resources_;
};

bool contains(const TaskSet& ts, SectionId a, SectionId b);

Duration chain_duration(const TaskSet& ts, const ZChain& chain);

// Parses the bracket notation:
//
//   # comment
//   J1: [R2: 3 [R1: 1]]
//   J2: [R1: 3] [R1: 4]
//
// Jobs must appear as J1..Jn in order. Warnings (such as zero-length
// sections) are appended to `warnings` when it is non-null.
TaskSet parse_taskset(std::string_view text,
                      std::vector<std::string>* warnings = nullptr);

// Canonical text form accepted by parse_taskset.
std::string serialize(const TaskSet& ts);

ZChain parse_chain(std::string_view text);

}  // namespace pipblock

#endif  // PIPBLOCK_TASKSET_HPP_
