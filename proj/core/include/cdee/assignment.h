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

#ifndef CDEE_ASSIGNMENT_H_
#define CDEE_ASSIGNMENT_H_

#include <vector>

namespace cdee {

using WeightMatrix = std::vector<std::vector<double>>;

// Maximum-weight one-to-one assignment (Hungarian method, O(n^2 m)).
// Returns, for each row, its column or -1 when there are more rows than
// columns and the row stays unmatched. Every row is matched when
// rows <= cols. Throws Error on ragged rows or non-finite weights; an empty
// matrix yields an empty assignment.
std::vector<int> MaxWeightAssignment(const WeightMatrix& weights);

// Sum of weights[i][assignment[i]] over matched rows, in row order.
double AssignmentWeight(const WeightMatrix& weights,
                        const std::vector<int>& assignment);

}  // namespace cdee

#endif  // CDEE_ASSIGNMENT_H_
