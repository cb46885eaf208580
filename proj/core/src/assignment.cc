// Copyright 2026 The CDEE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cdee/assignment.h"

#include <cmath>
#include <limits>

#include "cdee/types.h"

namespace cdee {
namespace {

// Minimum-cost assignment of n rows into m >= n columns using row/column
// potentials. cost is 1-indexed in both dimensions.
std::vector<int> MinCostRowsIntoColumns(const WeightMatrix& cost, size_t n,
                                        size_t m) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<size_t> p(m + 1, 0), way(m + 1, 0);
  for (size_t i = 1; i <= n; ++i) {
    p[0] = i;
    size_t j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      size_t i0 = p[j0];
      size_t j1 = 0;
      double delta = kInf;
      for (size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = static_cast<int>(j - 1);
  }
  return row_to_col;
}

}  // namespace

std::vector<int> MaxWeightAssignment(const WeightMatrix& weights) {
  const size_t rows = weights.size();
  if (rows == 0) return {};
  const size_t cols = weights.front().size();
  for (const auto& row : weights) {
    if (row.size() != cols) throw Error("assignment: matrix rows differ in length");
    for (double w : row) {
      if (!std::isfinite(w)) throw Error("assignment: non-finite weight");
    }
  }
  if (cols == 0) return std::vector<int>(rows, -1);

  if (rows <= cols) {
    WeightMatrix cost(rows, std::vector<double>(cols));
    for (size_t i = 0; i < rows; ++i) {
      for (size_t j = 0; j < cols; ++j) cost[i][j] = -weights[i][j];
    }
    return MinCostRowsIntoColumns(cost, rows, cols);
  }

  // More rows than columns: assign columns into rows on the transpose.
  WeightMatrix cost(cols, std::vector<double>(rows));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) cost[j][i] = -weights[i][j];
  }
  std::vector<int> col_to_row = MinCostRowsIntoColumns(cost, cols, rows);
  std::vector<int> row_to_col(rows, -1);
  for (size_t j = 0; j < cols; ++j) {
    row_to_col[static_cast<size_t>(col_to_row[j])] = static_cast<int>(j);
  }
  return row_to_col;
}

double AssignmentWeight(const WeightMatrix& weights,
                        const std::vector<int>& assignment) {
  double total = 0.0;
  for (size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] >= 0) total += weights[i][static_cast<size_t>(assignment[i])];
  }
  return total;
}

}  // namespace cdee
