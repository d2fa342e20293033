/*
 * Copyright (c) 2026, The egoproto Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Distance and reduction kernels behind the clustering code.
//
// Every kernel has a scalar reference version and, where the build and the
// CPU allow it, a vector version (AVX2+FMA on x86-64, NEON on AArch64). The
// active table is picked once at first use; EGOPROTO_SIMD=scalar in the
// environment forces the reference kernels.

#include <cstddef>
#include <string_view>

namespace egoproto::simd {

enum class Level { Scalar, Avx2, Neon };

std::string_view to_string(Level level);

struct KernelTable {
  Level level;
  /// sum_i (a[i] - b[i])^2
  double (*squared_distance)(const double* a, const double* b, std::size_t n);
  /// sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// out[r] = squared_distance(point, rows + r * stride, dim) for r in [0, count)
  void (*squared_distances_to_rows)(const double* point, const double* rows, std::size_t count,
                                    std::size_t dim, std::size_t stride, double* out);
  /// y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
};

/// Reference kernels, always available.
const KernelTable& scalar_kernels();

/// Vector kernels for this CPU, or nullptr when the build or CPU lacks them.
const KernelTable* vector_kernels();

/// The table used by the library.
const KernelTable& active();

/// Override the dispatch choice (tests and benchmarks). Falls back to scalar
/// when the requested level is unavailable; returns the level in effect.
Level force(Level level);

}  // namespace egoproto::simd
