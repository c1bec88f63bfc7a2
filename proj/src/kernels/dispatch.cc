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

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "editjudge/kernels.h"

namespace editjudge::kernels {

namespace {

constexpr KernelTable kScalarTable{&scalar::dot, &scalar::squared_norm, &scalar::dot_rows};

#if defined(__x86_64__) || defined(_M_X64)
constexpr KernelTable kAvx2Table{&avx2::dot, &avx2::squared_norm, &avx2::dot_rows};
#endif

Isa pick_isa() {
  const char* env = std::getenv("EDITJUDGE_SIMD");
  const std::string want = env ? env : "auto";
  if (want == "scalar") return Isa::kScalar;
  if ((want == "avx2" || want == "auto") && isa_supported(Isa::kAvx2)) return Isa::kAvx2;
  return Isa::kScalar;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() {
  static const Isa isa = pick_isa();
  return isa;
}

const KernelTable& table(Isa isa) {
#if defined(__x86_64__) || defined(_M_X64)
  if (isa == Isa::kAvx2 && isa_supported(Isa::kAvx2)) return kAvx2Table;
#endif
  return kScalarTable;
}

double dot(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  return table(active_isa()).dot(a.data(), b.data(), a.size());
}

double squared_norm(std::span<const float> a) {
  return table(active_isa()).squared_norm(a.data(), a.size());
}

void dot_rows(std::span<const float> query, std::span<const float> rows, std::size_t dim,
              std::span<double> scores) {
  if (query.size() != dim || (dim == 0 ? !rows.empty() : rows.size() % dim != 0) ||
      scores.size() != (dim == 0 ? 0 : rows.size() / dim)) {
    throw std::invalid_argument("dot_rows: shape mismatch");
  }
  table(active_isa()).dot_rows(query.data(), rows.data(), dim, scores.size(), scores.data());
}

double cosine(std::span<const float> a, std::span<const float> b) {
  const double na = squared_norm(a);
  const double nb = squared_norm(b);
  if (na <= 0.0 || nb <= 0.0) return 0.0;
  const double c = dot(a, b) / std::sqrt(na * nb);
  return c > 1.0 ? 1.0 : (c < -1.0 ? -1.0 : c);
}

}  // namespace editjudge::kernels
