#include <atomic>
#include <cstdlib>
#include <string>

#include "fraclap/error.hpp"
#include "fraclap/simd/kernels.hpp"

namespace fraclap::simd {

#ifndef FRACLAP_HAVE_AVX2
const KernelTable* avx2_kernels() { return nullptr; }
#endif

namespace {

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> table{nullptr};
  return table;
}

const KernelTable& table_for(Backend backend) {
  if (backend == Backend::Avx2) {
    require(cpu_supports(Backend::Avx2), ErrorKind::InvalidArgument, "AVX2 backend not available on this CPU");
    return *avx2_kernels();
  }
  return scalar_kernels();
}

}  // namespace

std::string_view to_string(Backend backend) { return backend == Backend::Avx2 ? "avx2" : "scalar"; }

bool cpu_supports(Backend backend) {
  if (backend == Backend::Scalar) return true;
#if defined(FRACLAP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  if (avx2_kernels() == nullptr) return false;
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend default_backend() {
  if (const char* env = std::getenv("FRACLAP_SIMD")) {
    const std::string value(env);
    if (value == "scalar") return Backend::Scalar;
    if (value == "avx2" && cpu_supports(Backend::Avx2)) return Backend::Avx2;
  }
  return cpu_supports(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

void select_backend(Backend backend) { slot().store(&table_for(backend)); }

const KernelTable& active() {
  const KernelTable* table = slot().load(std::memory_order_acquire);
  if (table == nullptr) {
    table = &table_for(default_backend());
    slot().store(table);
  }
  return *table;
}

Backend active_backend() { return active().name == "avx2" ? Backend::Avx2 : Backend::Scalar; }

}  // namespace fraclap::simd
