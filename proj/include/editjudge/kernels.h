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

// Dense float32 vector kernels used by the retrieval scan and cosine
// agreement. Inputs are float32, accumulation is float64 in every variant so
// the scalar and SIMD paths agree to rounding-order differences (~1e-15).
//
// The variant is picked once per process from the CPU and the EDITJUDGE_SIMD
// environment variable ("auto", "scalar", "avx2"). Requesting an unsupported
// variant falls back to scalar.

#ifndef EDITJUDGE_KERNELS_H_
#define EDITJUDGE_KERNELS_H_

#include <cstddef>
#include <span>
#include <string_view>

namespace editjudge::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);
Isa active_isa();

// Variant table. Pointers are never null.
struct KernelTable {
  double (*dot)(const float* a, const float* b, std::size_t n);
  double (*squared_norm)(const float* a, std::size_t n);
  // scores[r] = dot(query, rows + r * dim) for r in [0, row_count).
  void (*dot_rows)(const float* query, const float* rows, std::size_t dim, std::size_t row_count,
                   double* scores);
};

const KernelTable& table(Isa isa);

namespace scalar {
double dot(const float* a, const float* b, std::size_t n);
double squared_norm(const float* a, std::size_t n);
void dot_rows(const float* query, const float* rows, std::size_t dim, std::size_t row_count,
              double* scores);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double dot(const float* a, const float* b, std::size_t n);
double squared_norm(const float* a, std::size_t n);
void dot_rows(const float* query, const float* rows, std::size_t dim, std::size_t row_count,
              double* scores);
}  // namespace avx2
#endif

// Dispatched entry points.
double dot(std::span<const float> a, std::span<const float> b);
double squared_norm(std::span<const float> a);
void dot_rows(std::span<const float> query, std::span<const float> rows, std::size_t dim,
              std::span<double> scores);

// Cosine similarity; 0.0 when either vector has zero norm.
double cosine(std::span<const float> a, std::span<const float> b);

}  // namespace editjudge::kernels

#endif  // EDITJUDGE_KERNELS_H_
