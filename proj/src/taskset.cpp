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

#include "pipblock/taskset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace pipblock {

std::string to_string(ResourceId r) { return "R" + std::to_string(r.index); }

std::string to_string(SectionId z) {
  return "z" + std::to_string(z.job) + "," + std::to_string(z.position);
}

namespace {

int parse_positive(std::string_view text, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value <= 0) {
    throw std::invalid_argument("bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

template <typename Range, typename Fn>
std::string join(const Range& range, Fn&& fn, std::string_view sep = ", ") {
  std::string out;
  bool first = true;
  for (const auto& item : range) {
    if (!first) out += sep;
    first = false;
    out += fn(item);
  }
  return out;
}

}  // namespace

SectionId parse_section_id(std::string_view text) {
  if (!text.empty() && (text.front() == 'z' || text.front() == 'Z')) text.remove_prefix(1);
  auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw std::invalid_argument("bad section id '" + std::string(text) + "', expected z<j>,<p>");
  }
  return SectionId{parse_positive(text.substr(0, comma), "job index"),
                   parse_positive(text.substr(comma + 1), "section position")};
}

std::string to_string(const ZChain& chain) {
  return "<" + join(chain, [](SectionId z) { return to_string(z); }) + ">";
}

std::string to_string(const ResourceSet& resources) {
  return "{" + join(resources, [](ResourceId r) { return to_string(r); }) + "}";
}

std::string to_string(const JobSet& jobs) {
  return "{" + join(jobs, [](int j) { return "J" + std::to_string(j); }) + "}";
}

ParseError::ParseError(int line, int column, const std::string& message)
    : TaskSetError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                   ": " + message),
      line_(line),
      column_(column) {}

// ---------------------------------------------------------------------------
// TaskSet

TaskSet TaskSet::from_specs(const std::vector<std::vector<SectionSpec>>& jobs) {
  std::vector<Job> flat;
  flat.reserve(jobs.size());
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    Job job;
    job.index = static_cast<int>(j) + 1;
    // Preorder walk assigns positions in wait-operation order.
    auto visit = [&](auto&& self, const SectionSpec& spec, std::optional<int> parent) -> void {
      CriticalSection cs;
      cs.id = SectionId{job.index, static_cast<int>(job.sections.size()) + 1};
      cs.resource = spec.resource;
      cs.duration = spec.duration;
      cs.parent = parent;
      job.sections.push_back(cs);
      const int pos = cs.id.position;
      for (const auto& child : spec.nested) self(self, child, pos);
    };
    for (const auto& top : jobs[j]) visit(visit, top, std::nullopt);
    flat.push_back(std::move(job));
  }
  return TaskSet(std::move(flat));
}

TaskSet::TaskSet(std::vector<Job> jobs) : jobs_(std::move(jobs)) {
  if (jobs_.empty()) throw InvalidTaskSetError("task set has no jobs");
  for (std::size_t j = 0; j < jobs_.size(); ++j) {
    Job& job = jobs_[j];
    if (job.index != static_cast<int>(j) + 1) {
      throw InvalidTaskSetError("job indices must be 1..n in priority order; found J" +
                                std::to_string(job.index) + " at position " +
                                std::to_string(j + 1));
    }
    // Stack of currently open sections (positions), outermost first.
    std::vector<int> open;
    for (std::size_t p = 0; p < job.sections.size(); ++p) {
      CriticalSection& cs = job.sections[p];
      const int pos = static_cast<int>(p) + 1;
      if (cs.id.job != job.index || cs.id.position != pos) {
        throw InvalidTaskSetError("section " + to_string(cs.id) + " is out of place in J" +
                                  std::to_string(job.index));
      }
      if (cs.resource.index <= 0) {
        throw InvalidTaskSetError("section " + to_string(cs.id) + " has an invalid resource");
      }
      if (cs.duration < Duration::zero()) {
        throw InvalidTaskSetError("section " + to_string(cs.id) + " has a negative duration");
      }
      if (cs.parent) {
        auto it = std::find(open.begin(), open.end(), *cs.parent);
        if (it == open.end()) {
          throw InvalidTaskSetError("section " + to_string(cs.id) +
                                    " names a parent that is not an open enclosing section");
        }
        open.erase(it + 1, open.end());
      } else {
        open.clear();
      }
      for (int anc : open) {
        if (job.sections[anc - 1].resource == cs.resource) {
          throw InvalidTaskSetError(to_string(cs.resource) + " is locked twice in one nested "
                                    "critical section of J" + std::to_string(job.index) +
                                    " (" + to_string(SectionId{job.index, anc}) + " and " +
                                    to_string(cs.id) + ")");
        }
      }
      open.push_back(pos);
      resources_.insert(cs.resource);
    }
    for (std::size_t p = job.sections.size(); p-- > 0;) {
      CriticalSection& cs = job.sections[p];
      cs.subtree_end = std::max(cs.subtree_end, cs.id.position);
      if (cs.parent) {
        auto& parent = job.sections[*cs.parent - 1];
        parent.subtree_end = std::max(parent.subtree_end, cs.subtree_end);
      }
    }
  }
}

void TaskSet::check_job_index(int j) const {
  if (j < 1 || j > job_count()) {
    throw std::out_of_range("job index " + std::to_string(j) + " outside 1.." +
                            std::to_string(job_count()));
  }
}

const Job& TaskSet::job(int j) const {
  check_job_index(j);
  return jobs_[j - 1];
}

bool TaskSet::has_section(SectionId z) const {
  return z.job >= 1 && z.job <= job_count() && z.position >= 1 &&
         z.position <= static_cast<int>(jobs_[z.job - 1].sections.size());
}

const CriticalSection& TaskSet::section(SectionId z) const {
  if (!has_section(z)) throw std::out_of_range("no critical section " + to_string(z));
  return jobs_[z.job - 1].sections[z.position - 1];
}

std::size_t TaskSet::section_count() const {
  std::size_t n = 0;
  for (const auto& job : jobs_) n += job.sections.size();
  return n;
}

bool TaskSet::contains(SectionId outer, SectionId inner) const {
  if (outer.job != inner.job) return false;
  const auto& cs = section(outer);
  return inner.position > outer.position && inner.position <= cs.subtree_end;
}

std::vector<SectionId> TaskSet::enclosing(SectionId z) const {
  std::vector<SectionId> out;
  auto parent = section(z).parent;
  while (parent) {
    SectionId p{z.job, *parent};
    out.push_back(p);
    parent = section(p).parent;
  }
  return out;
}

ResourceSet TaskSet::held_resources(SectionId z) const {
  ResourceSet out{section(z).resource};
  for (SectionId a : enclosing(z)) out.insert(section(a).resource);
  return out;
}

bool contains(const TaskSet& ts, SectionId a, SectionId b) { return ts.contains(a, b); }

Duration chain_duration(const TaskSet& ts, const ZChain& chain) {
  Duration total;
  for (SectionId z : chain) total += ts.section(z).duration;
  return total;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class LineParser {
 public:
  LineParser(std::string_view line, int line_no) : s_(line), line_(line_no) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(line_, static_cast<int>(pos_) + 1, message);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  int number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a positive integer");
    try {
      return parse_positive(s_.substr(start, pos_ - start), "index");
    } catch (const std::invalid_argument& e) {
      pos_ = start;
      fail(e.what());
    }
  }

  Duration duration() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
           s_[pos_] != '[' && s_[pos_] != ']') {
      ++pos_;
    }
    if (start == pos_) fail("expected a duration");
    try {
      return Duration::parse(s_.substr(start, pos_ - start));
    } catch (const std::invalid_argument& e) {
      pos_ = start;
      fail(e.what());
    }
  }

  int job_header() {
    skip_ws();
    if (pos_ >= s_.size() || (s_[pos_] != 'J' && s_[pos_] != 'j')) fail("expected 'J<index>:'");
    ++pos_;
    int j = number();
    expect(':');
    return j;
  }

  // [R<k>: <duration> <nested groups>]
  SectionSpec group(std::vector<ResourceId>& open, int job,
                    std::vector<std::string>* warnings) {
    expect('[');
    skip_ws();
    if (pos_ >= s_.size() || (s_[pos_] != 'R' && s_[pos_] != 'r')) fail("expected 'R<index>'");
    const std::size_t resource_col = pos_;
    ++pos_;
    SectionSpec spec;
    spec.resource = ResourceId{number()};
    expect(':');
    spec.duration = duration();
    if (std::find(open.begin(), open.end(), spec.resource) != open.end()) {
      throw InvalidTaskSetError("line " + std::to_string(line_) + ", column " +
                                std::to_string(resource_col + 1) + ": " +
                                to_string(spec.resource) +
                                " is locked twice in one nested critical section of J" +
                                std::to_string(job));
    }
    if (spec.duration.is_zero() && warnings) {
      warnings->push_back("line " + std::to_string(line_) + ": zero-length critical section on " +
                          to_string(spec.resource) + " in J" + std::to_string(job));
    }
    open.push_back(spec.resource);
    while (peek('[')) spec.nested.push_back(group(open, job, warnings));
    open.pop_back();
    expect(']');
    return spec;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
};

}  // namespace

TaskSet parse_taskset(std::string_view text, std::vector<std::string>* warnings) {
  std::vector<std::vector<SectionSpec>> jobs;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;

    LineParser p(line, line_no);
    int j = p.job_header();
    if (j != static_cast<int>(jobs.size()) + 1) {
      p.fail("expected J" + std::to_string(jobs.size() + 1) + ", found J" + std::to_string(j) +
             " (jobs must be listed J1..Jn, highest priority first)");
    }
    std::vector<SectionSpec> groups;
    std::vector<ResourceId> open;
    while (!p.at_end()) {
      if (!p.peek('[')) p.fail("expected '[' or end of line");
      groups.push_back(p.group(open, j, warnings));
    }
    jobs.push_back(std::move(groups));
  }
  if (jobs.empty()) throw ParseError(line_no, 1, "task set has no jobs");
  return TaskSet::from_specs(jobs);
}

std::string serialize(const TaskSet& ts) {
  std::ostringstream os;
  for (const Job& job : ts.jobs()) {
    os << 'J' << job.index << ':';
    std::vector<int> open;
    for (const CriticalSection& cs : job.sections) {
      while (!open.empty() && !(cs.parent && *cs.parent == open.back())) {
        os << ']';
        open.pop_back();
      }
      os << " [" << to_string(cs.resource) << ": " << cs.duration;
      open.push_back(cs.id.position);
    }
    os << std::string(open.size(), ']') << '\n';
  }
  return os.str();
}

ZChain parse_chain(std::string_view text) {
  ZChain chain;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) ||
                               text[i] == '<' || text[i] == '>' || text[i] == ';')) {
      ++i;
    }
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
           text[i] != '>' && text[i] != ';') {
      ++i;
    }
    std::size_t end = i;
    if (end > start && text[end - 1] == ',') --end;  // "<z4,1, z3,2>" form
    if (start < end) chain.push_back(parse_section_id(text.substr(start, end - start)));
  }
  return chain;
}

}  // namespace pipblock
