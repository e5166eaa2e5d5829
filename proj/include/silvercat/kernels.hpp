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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

// Arithmetic inner loops shared by the trainer and the predictor.
// Every kernel has a scalar reference implementation; on x86-64 an AVX2
// variant is selected at startup when the CPU supports it. The scalar and
// vector variants may differ in the last bits because the accumulation
// order differs; within one process the selected variant is fixed, so
// repeated runs are bit-identical. Set SILVERCAT_KERNELS=scalar|avx2 to
// force a backend.
namespace silvercat::kernels {

enum class Backend { scalar, avx2 };

// sum over k of w[idx[k]]; the dot product of w with a sparse binary vector.
double sparse_sum(const double* w, const std::int32_t* idx, std::size_t n);

// sum over k of w[idx[k]] * val[k].
double sparse_dot(const double* w, const std::int32_t* idx, const double* val,
                  std::size_t n);

// w[idx[k]] += a for every k. Indices must be distinct.
void scatter_add(double* w, const std::int32_t* idx, std::size_t n, double a);

// w[idx[k]] += a * val[k] for every k. Indices must be distinct.
void scatter_add_scaled(double* w, const std::int32_t* idx, const double* val,
                        std::size_t n, double a);

// acc[c] += sum over k of table[idx[k] * ncls + c] for every class c.
// `table` is a column-major weight matrix: ncls contiguous per-class
// weights for each feature column. This is the one-vs-rest decision-value
// accumulation for a sparse binary vector.
void class_accumulate(double* acc, const double* table, std::size_t ncls,
                      const std::int32_t* idx, std::size_t n);

Backend active_backend();
bool backend_available(Backend b);
// Returns false if the requested backend is not available on this CPU.
bool set_backend(Backend b);
std::string_view backend_name(Backend b);

}  // namespace silvercat::kernels
