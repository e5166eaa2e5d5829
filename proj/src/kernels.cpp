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

#include "silvercat/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace silvercat::kernels {

namespace scalar {

double sparse_sum(const double* w, const std::int32_t* idx, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) acc += w[idx[k]];
  return acc;
}

double sparse_dot(const double* w, const std::int32_t* idx, const double* val,
                  std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) acc += w[idx[k]] * val[k];
  return acc;
}

void class_accumulate(double* acc, const double* table, std::size_t ncls,
                      const std::int32_t* idx, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double* row = table + static_cast<std::size_t>(idx[k]) * ncls;
    for (std::size_t c = 0; c < ncls; ++c) acc[c] += row[c];
  }
}

}  // namespace scalar

#if SILVERCAT_HAVE_AVX2
namespace avx2 {
double sparse_sum(const double* w, const std::int32_t* idx, std::size_t n);
double sparse_dot(const double* w, const std::int32_t* idx, const double* val,
                  std::size_t n);
void class_accumulate(double* acc, const double* table, std::size_t ncls,
                      const std::int32_t* idx, std::size_t n);
}  // namespace avx2
#endif

namespace {

struct Dispatch {
  Backend backend;
  double (*sparse_sum)(const double*, const std::int32_t*, std::size_t);
  double (*sparse_dot)(const double*, const std::int32_t*, const double*,
                       std::size_t);
  void (*class_accumulate)(double*, const double*, std::size_t,
                           const std::int32_t*, std::size_t);
};

constexpr Dispatch kScalar{Backend::scalar, scalar::sparse_sum,
                           scalar::sparse_dot, scalar::class_accumulate};

#if SILVERCAT_HAVE_AVX2
constexpr Dispatch kAvx2{Backend::avx2, avx2::sparse_sum, avx2::sparse_dot,
                         avx2::class_accumulate};
#endif

bool cpu_has_avx2() {
#if SILVERCAT_HAVE_AVX2
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Dispatch select_default() {
#if SILVERCAT_HAVE_AVX2
  bool want_avx2 = cpu_has_avx2();
  if (const char* env = std::getenv("SILVERCAT_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) want_avx2 = false;
    if (std::strcmp(env, "avx2") == 0 && !cpu_has_avx2()) want_avx2 = false;
  }
  if (want_avx2) return kAvx2;
#endif
  return kScalar;
}

Dispatch g_dispatch = select_default();

}  // namespace

double sparse_sum(const double* w, const std::int32_t* idx, std::size_t n) {
  return g_dispatch.sparse_sum(w, idx, n);
}

double sparse_dot(const double* w, const std::int32_t* idx, const double* val,
                  std::size_t n) {
  return g_dispatch.sparse_dot(w, idx, val, n);
}

void scatter_add(double* w, const std::int32_t* idx, std::size_t n, double a) {
  // No scatter instruction below AVX-512; scalar stores on every backend.
  for (std::size_t k = 0; k < n; ++k) w[idx[k]] += a;
}

void scatter_add_scaled(double* w, const std::int32_t* idx, const double* val,
                        std::size_t n, double a) {
  for (std::size_t k = 0; k < n; ++k) w[idx[k]] += a * val[k];
}

void class_accumulate(double* acc, const double* table, std::size_t ncls,
                      const std::int32_t* idx, std::size_t n) {
  g_dispatch.class_accumulate(acc, table, ncls, idx, n);
}

Backend active_backend() { return g_dispatch.backend; }

bool backend_available(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
      return cpu_has_avx2();
  }
  return false;
}

bool set_backend(Backend b) {
  if (!backend_available(b)) return false;
#if SILVERCAT_HAVE_AVX2
  g_dispatch = (b == Backend::avx2) ? kAvx2 : kScalar;
#else
  g_dispatch = kScalar;
#endif
  return true;
}

std::string_view backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

}  // namespace silvercat::kernels
