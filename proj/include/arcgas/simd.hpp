#pragma once

#include <cstddef>

namespace arcgas::simd {

enum class Isa { Scalar, Avx2, Neon };

const char* to_string(Isa isa);

// All kernels use 4 interleaved lanes so that the vector variants reproduce the
// scalar reference up to FMA contraction.
struct Kernels {
  Isa isa;
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y = A x, A row-major n x n
  void (*symv)(const double* A, std::size_t n, const double* x, double* y);
  // sum_i log|(xn - x_i) / (xo - x_i)|, -inf if xn hits a point
  double (*log_ratio_real)(const double* x, std::size_t n, double xo, double xn);
  // sum_i log|(wn - p_i) / (wo - p_i)| for complex points p = re + i im
  double (*log_ratio_complex)(const double* re, const double* im, std::size_t n, double wo_re, double wo_im,
                              double wn_re, double wn_im);
};

const Kernels& scalar_kernels();
// nullptr when the variant is not compiled in or the CPU lacks it
const Kernels* avx2_kernels();
const Kernels* neon_kernels();

// best available, overridable with ARCGAS_SIMD=scalar|avx2|neon
const Kernels& kernels();

}  // namespace arcgas::simd
