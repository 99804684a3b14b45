#pragma once

// Dense complex inner loops used by the matrix kernel. All buffers are
// row-major n x n matrices of interleaved (re, im) doubles, which is the
// layout std::complex<double> arrays are guaranteed to have.

#include <cstddef>
#include <string_view>

namespace aschern::kernels {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  // c = a * b
  void (*zgemm)(std::size_t n, const double* a, const double* b, double* c);
  // out[0] + i out[1] = Tr(a * b)
  void (*ztrace_prod)(std::size_t n, const double* a, const double* b, double* out);
  // y += alpha * x over `count` complex entries
  void (*zaxpy_real)(std::size_t count, double alpha, const double* x, double* y);
};

const KernelTable& scalar_table();

/// nullptr when the binary was built without the variant.
const KernelTable* avx2_table();

bool isa_supported(Isa isa);

/// Best supported ISA unless overridden by set_active_isa() or the
/// ASCHERN_KERNELS environment variable ("scalar" or "avx2").
Isa active_isa();
void set_active_isa(Isa isa);

const KernelTable& active();

std::string_view to_string(Isa isa);

}  // namespace aschern::kernels
