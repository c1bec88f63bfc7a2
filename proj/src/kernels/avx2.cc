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

// AVX2+FMA kernels. Functions carry a target attribute instead of building
// the file with -mavx2, so nothing here can leak AVX2 code into inline
// functions shared with other translation units. Only called after the
// dispatcher has confirmed CPU support.

#include "editjudge/kernels.h"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#define EDITJUDGE_AVX2 __attribute__((target("avx2,fma")))

namespace editjudge::kernels::avx2 {

namespace {

EDITJUDGE_AVX2 inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  const __m128d swapped = _mm_unpackhi_pd(pair, pair);
  return _mm_cvtsd_f64(_mm_add_sd(pair, swapped));
}

}  // namespace

EDITJUDGE_AVX2 double dot(const float* a, const float* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 va = _mm256_loadu_ps(a + i);
    const __m256 vb = _mm256_loadu_ps(b + i);
    const __m256d a_lo = _mm256_cvtps_pd(_mm256_castps256_ps128(va));
    const __m256d a_hi = _mm256_cvtps_pd(_mm256_extractf128_ps(va, 1));
    const __m256d b_lo = _mm256_cvtps_pd(_mm256_castps256_ps128(vb));
    const __m256d b_hi = _mm256_cvtps_pd(_mm256_extractf128_ps(vb, 1));
    acc0 = _mm256_fmadd_pd(a_lo, b_lo, acc0);
    acc1 = _mm256_fmadd_pd(a_hi, b_hi, acc1);
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  return sum;
}

EDITJUDGE_AVX2 double squared_norm(const float* a, std::size_t n) { return dot(a, a, n); }

EDITJUDGE_AVX2 void dot_rows(const float* query, const float* rows, std::size_t dim,
                             std::size_t row_count, double* scores) {
  for (std::size_t r = 0; r < row_count; ++r) scores[r] = dot(query, rows + r * dim, dim);
}

}  // namespace editjudge::kernels::avx2

#endif
