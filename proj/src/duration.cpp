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

#include "pipblock/duration.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace pipblock {

Duration Duration::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty duration");
  std::int64_t whole = 0;
  std::int64_t frac = 0;
  int frac_digits = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_point) throw std::invalid_argument("bad duration '" + std::string(text) + "'");
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("bad duration '" + std::string(text) + "'");
    }
    seen_digit = true;
    int digit = c - '0';
    if (seen_point) {
      if (++frac_digits > kMaxFractionDigits) {
        throw std::invalid_argument("duration '" + std::string(text) +
                                    "' has more than 6 fractional digits");
      }
      frac = frac * 10 + digit;
    } else {
      if (whole > (std::numeric_limits<std::int64_t>::max() / kTicksPerUnit - 9) / 10) {
        throw std::invalid_argument("duration '" + std::string(text) + "' is too large");
      }
      whole = whole * 10 + digit;
    }
  }
  if (!seen_digit) throw std::invalid_argument("bad duration '" + std::string(text) + "'");
  for (int k = frac_digits; k < kMaxFractionDigits; ++k) frac *= 10;
  return from_ticks(whole * kTicksPerUnit + frac);
}

std::string Duration::to_string() const {
  std::int64_t t = ticks_;
  std::string out;
  if (t < 0) {
    out.push_back('-');
    t = -t;
  }
  out += std::to_string(t / kTicksPerUnit);
  std::int64_t frac = t % kTicksPerUnit;
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, kMaxFractionDigits - digits.size(), '0');
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
    out += '.' + digits;
  }
  return out;
}

}  // namespace pipblock
