#include <atomic>
#include <cstdlib>
#include <string>

#include "aschern/kernels.hpp"

namespace aschern::kernels {

#ifndef ASCHERN_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(__i386__)
      return avx2_table() != nullptr && __builtin_cpu_supports("avx2") &&
             __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

namespace {

Isa detect() {
  if (const char* env = std::getenv("ASCHERN_KERNELS")) {
    const std::string want(env);
    if (want == "scalar") return Isa::Scalar;
    if (want == "avx2" && isa_supported(Isa::Avx2)) return Isa::Avx2;
  }
  return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& slot() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

Isa active_isa() { return slot().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  slot().store(isa_supported(isa) ? isa : Isa::Scalar, std::memory_order_relaxed);
}

const KernelTable& active() {
  if (active_isa() == Isa::Avx2) return *avx2_table();
  return scalar_table();
}

std::string_view to_string(Isa isa) {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

}  // namespace aschern::kernels
