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

#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_internal.hpp"

namespace egoproto::simd {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* detect() {
#if defined(EGOPROTO_HAVE_AVX2_KERNELS)
  if (cpu_has_avx2()) return &detail::avx2_table();
#endif
#if defined(EGOPROTO_HAVE_NEON_KERNELS)
  return &detail::neon_table();
#endif
  (void)&cpu_has_avx2;
  return nullptr;
}

const KernelTable* initial_choice() {
  if (const char* env = std::getenv("EGOPROTO_SIMD"); env != nullptr && std::string(env) == "scalar") {
    return &detail::scalar_table();
  }
  const KernelTable* v = detect();
  return v != nullptr ? v : &detail::scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_choice()};
  return table;
}

}  // namespace

std::string_view to_string(Level level) {
  switch (level) {
    case Level::Scalar: return "scalar";
    case Level::Avx2: return "avx2";
    case Level::Neon: return "neon";
  }
  return "unknown";
}

const KernelTable& scalar_kernels() { return detail::scalar_table(); }

const KernelTable* vector_kernels() {
  static const KernelTable* table = detect();
  return table;
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

Level force(Level level) {
  const KernelTable* table = &detail::scalar_table();
  if (level != Level::Scalar) {
    const KernelTable* v = vector_kernels();
    if (v != nullptr && v->level == level) table = v;
  }
  current().store(table, std::memory_order_release);
  return table->level;
}

}  // namespace egoproto::simd
