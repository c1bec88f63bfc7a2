// Copyright 2026 The EditJudge Authors.
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

// Reference kernels. Every SIMD variant is tested against these.

#include "editjudge/kernels.h"

namespace editjudge::kernels::scalar {

double dot(const float* a, const float* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  return sum;
}

double squared_norm(const float* a, std::size_t n) { return dot(a, a, n); }

void dot_rows(const float* query, const float* rows, std::size_t dim, std::size_t row_count,
              double* scores) {
  for (std::size_t r = 0; r < row_count; ++r) scores[r] = dot(query, rows + r * dim, dim);
}

}  // namespace editjudge::kernels::scalar
