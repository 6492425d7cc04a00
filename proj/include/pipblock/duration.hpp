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

#ifndef PIPBLOCK_DURATION_HPP_
#define PIPBLOCK_DURATION_HPP_

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace pipblock {

// Exact time value stored as a fixed-point count of micro time units.
// Blocking-time analysis compares sums of durations for equality, so all
// arithmetic stays in integers.
class Duration {
 public:
  static constexpr std::int64_t kTicksPerUnit = 1'000'000;
  static constexpr int kMaxFractionDigits = 6;

  constexpr Duration() = default;

  static constexpr Duration from_ticks(std::int64_t ticks) {
    Duration d;
    d.ticks_ = ticks;
    return d;
  }
  static constexpr Duration units(std::int64_t whole) {
    return from_ticks(whole * kTicksPerUnit);
  }
  static constexpr Duration zero() { return Duration(); }

  // Parses a non-negative decimal literal such as "3", "0.5" or "12.25".
  // Throws std::invalid_argument on malformed input or more than six
  // fractional digits.
  static Duration parse(std::string_view text);

  constexpr std::int64_t ticks() const { return ticks_; }
  constexpr bool is_zero() const { return ticks_ == 0; }
  double to_double() const {
    return static_cast<double>(ticks_) / static_cast<double>(kTicksPerUnit);
  }

  // Shortest decimal rendering that parses back to the same value.
  std::string to_string() const;

  constexpr auto operator<=>(const Duration&) const = default;

  constexpr Duration& operator+=(Duration other) {
    ticks_ += other.ticks_;
    return *this;
  }
  constexpr Duration& operator-=(Duration other) {
    ticks_ -= other.ticks_;
    return *this;
  }
  friend constexpr Duration operator+(Duration a, Duration b) { return a += b; }
  friend constexpr Duration operator-(Duration a, Duration b) { return a -= b; }
  friend constexpr Duration operator*(std::int64_t k, Duration d) {
    return from_ticks(k * d.ticks_);
  }

 private:
  std::int64_t ticks_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, Duration d) {
  return os << d.to_string();
}

}  // namespace pipblock

#endif  // PIPBLOCK_DURATION_HPP_
