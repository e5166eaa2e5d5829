// Copyright 2026 the silvercat project
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

// AVX2 kernel variants. This translation unit is the only one compiled
// with -mavx2; callers reach it through the dispatch table in kernels.cpp.

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

namespace silvercat::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

}  // namespace

double sparse_sum(const double* w, const std::int32_t* idx, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    __m128i i0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + k));
    __m128i i1 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + k + 4));
    acc0 = _mm256_add_pd(acc0, _mm256_i32gather_pd(w, i0, 8));
    acc1 = _mm256_add_pd(acc1, _mm256_i32gather_pd(w, i1, 8));
  }
  for (; k + 4 <= n; k += 4) {
    __m128i i0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + k));
    acc0 = _mm256_add_pd(acc0, _mm256_i32gather_pd(w, i0, 8));
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) acc += w[idx[k]];
  return acc;
}

double sparse_dot(const double* w, const std::int32_t* idx, const double* val,
                  std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    __m128i i0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + k));
    __m128i i1 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + k + 4));
    acc0 = _mm256_fmadd_pd(_mm256_i32gather_pd(w, i0, 8),
                           _mm256_loadu_pd(val + k), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_i32gather_pd(w, i1, 8),
                           _mm256_loadu_pd(val + k + 4), acc1);
  }
  for (; k + 4 <= n; k += 4) {
    __m128i i0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + k));
    acc0 = _mm256_fmadd_pd(_mm256_i32gather_pd(w, i0, 8),
                           _mm256_loadu_pd(val + k), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) acc += w[idx[k]] * val[k];
  return acc;
}

void class_accumulate(double* acc, const double* table, std::size_t ncls,
                      const std::int32_t* idx, std::size_t n) {
  const std::size_t c4 = ncls & ~std::size_t{3};
  for (std::size_t k = 0; k < n; ++k) {
    const double* row = table + static_cast<std::size_t>(idx[k]) * ncls;
    std::size_t c = 0;
    for (; c < c4; c += 4) {
      __m256d a = _mm256_loadu_pd(acc + c);
      a = _mm256_add_pd(a, _mm256_loadu_pd(row + c));
      _mm256_storeu_pd(acc + c, a);
    }
    for (; c < ncls; ++c) acc[c] += row[c];
  }
}

}  // namespace silvercat::kernels::avx2
