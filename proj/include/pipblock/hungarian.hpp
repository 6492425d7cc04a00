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

#ifndef PIPBLOCK_HUNGARIAN_HPP_
#define PIPBLOCK_HUNGARIAN_HPP_

// Hungarian method for the assignment problem, generic over the scalar type.
// The scalar needs +, -, default construction as zero and a total order;
// exact types (integers, Duration) make every step exact.

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <optional>
#include <vector>

namespace pipblock {

template <typename Scalar>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, Scalar fill = Scalar())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const Scalar& operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  Scalar max_coeff() const {
    Scalar best{};
    for (const auto& v : data_) best = std::max(best, v);
    return best;
  }

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

// Square cost matrix for maximising `gain`: m = D - gain on real cells and
// D on padding, where D is the largest gain. Padding stands for a phantom
// job or resource contributing nothing.
template <typename Scalar>
DenseMatrix<Scalar> max_gain_cost_matrix(const DenseMatrix<Scalar>& gain) {
  const std::size_t n = std::max(gain.rows(), gain.cols());
  const Scalar top = gain.max_coeff();
  DenseMatrix<Scalar> m(n, n, top);
  for (std::size_t r = 0; r < gain.rows(); ++r) {
    for (std::size_t c = 0; c < gain.cols(); ++c) m(r, c) = top - gain(r, c);
  }
  return m;
}

// Steps 1 and 2: subtract each row minimum, then each column minimum.
// Afterwards every row and column holds a zero and nothing is negative.
template <typename Scalar>
void reduce_rows_and_columns(DenseMatrix<Scalar>& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Scalar lo = m(r, 0);
    for (std::size_t c = 1; c < m.cols(); ++c) lo = std::min(lo, m(r, c));
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) -= lo;
  }
  for (std::size_t c = 0; c < m.cols(); ++c) {
    Scalar lo = m(0, c);
    for (std::size_t r = 1; r < m.rows(); ++r) lo = std::min(lo, m(r, c));
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) -= lo;
  }
}

namespace detail {

// Maximum matching on zero cells (Kuhn's augmenting paths). Returns the
// column matched to each row, or -1.
template <typename Scalar>
std::vector<int> match_zeros(const DenseMatrix<Scalar>& m) {
  const std::size_t n = m.rows();
  std::vector<int> row_of_col(m.cols(), -1);
  std::vector<int> col_of_row(n, -1);
  std::vector<char> seen;
  auto augment = [&](auto&& self, std::size_t r) -> bool {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) != Scalar() || seen[c]) continue;
      seen[c] = 1;
      if (row_of_col[c] < 0 || self(self, static_cast<std::size_t>(row_of_col[c]))) {
        row_of_col[c] = static_cast<int>(r);
        col_of_row[r] = static_cast<int>(c);
        return true;
      }
    }
    return false;
  };
  for (std::size_t r = 0; r < n; ++r) {
    seen.assign(m.cols(), 0);
    augment(augment, r);
  }
  return col_of_row;
}

}  // namespace detail

// Solves the square minimum-cost assignment on `cost` following the four
// steps of the Hungarian method. Step 3 uses a complete maximum matching on
// zeros; Step 4 derives the minimum line cover from that matching (König).
// Returns the column assigned to each row.
template <typename Scalar>
std::vector<int> solve_min_assignment(DenseMatrix<Scalar> cost) {
  assert(cost.rows() == cost.cols());
  const std::size_t n = cost.rows();
  if (n == 0) return {};
  while (true) {
    reduce_rows_and_columns(cost);
    std::vector<int> col_of_row = detail::match_zeros(cost);
    if (std::none_of(col_of_row.begin(), col_of_row.end(), [](int c) { return c < 0; })) {
      return col_of_row;
    }

    std::vector<int> row_of_col(n, -1);
    for (std::size_t r = 0; r < n; ++r) {
      if (col_of_row[r] >= 0) row_of_col[col_of_row[r]] = static_cast<int>(r);
    }
    // Alternating search from unmatched rows. Covered lines: unreached
    // rows and reached columns.
    std::vector<char> row_reached(n, 0), col_reached(n, 0);
    std::vector<std::size_t> todo;
    for (std::size_t r = 0; r < n; ++r) {
      if (col_of_row[r] < 0) {
        row_reached[r] = 1;
        todo.push_back(r);
      }
    }
    while (!todo.empty()) {
      std::size_t r = todo.back();
      todo.pop_back();
      for (std::size_t c = 0; c < n; ++c) {
        if (cost(r, c) != Scalar() || col_reached[c]) continue;
        col_reached[c] = 1;
        int next = row_of_col[c];
        if (next >= 0 && !row_reached[next]) {
          row_reached[next] = 1;
          todo.push_back(static_cast<std::size_t>(next));
        }
      }
    }
    std::optional<Scalar> theta;
    for (std::size_t r = 0; r < n; ++r) {
      if (!row_reached[r]) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (col_reached[c]) continue;
        if (!theta || cost(r, c) < *theta) theta = cost(r, c);
      }
    }
    assert(theta && *theta > Scalar());
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        const bool row_covered = !row_reached[r];
        const bool col_covered = col_reached[c];
        if (!row_covered && !col_covered) cost(r, c) -= *theta;
        if (row_covered && col_covered) cost(r, c) += *theta;
      }
    }
  }
}

// Maximum total gain over assignments pairing distinct rows with distinct
// columns (rows or columns may stay unassigned).
template <typename Scalar>
Scalar max_assignment_value(const DenseMatrix<Scalar>& gain) {
  if (gain.empty()) return Scalar();
  const auto col_of_row = solve_min_assignment(max_gain_cost_matrix(gain));
  Scalar total{};
  for (std::size_t r = 0; r < gain.rows(); ++r) {
    const auto c = static_cast<std::size_t>(col_of_row[r]);
    if (c < gain.cols()) total += gain(r, c);
  }
  return total;
}

}  // namespace pipblock

#endif  // PIPBLOCK_HUNGARIAN_HPP_
