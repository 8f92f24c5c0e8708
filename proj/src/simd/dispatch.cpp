#include <cstdlib>
#include <cstring>

#include "arcgas/simd.hpp"

namespace arcgas::simd {

#ifdef ARCGAS_HAVE_AVX2
const Kernels* avx2_kernels_impl();
#endif
#ifdef ARCGAS_HAVE_NEON
const Kernels* neon_kernels_impl();
#endif

const char* to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "?";
}

const Kernels* avx2_kernels() {
#ifdef ARCGAS_HAVE_AVX2
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return avx2_kernels_impl();
#endif
  return nullptr;
}

const Kernels* neon_kernels() {
#ifdef ARCGAS_HAVE_NEON
  return neon_kernels_impl();  // mandatory on aarch64
#else
  return nullptr;
#endif
}

namespace {

const Kernels& select() {
  const char* env = std::getenv("ARCGAS_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return scalar_kernels();
  if (env && std::strcmp(env, "avx2") == 0 && avx2_kernels()) return *avx2_kernels();
  if (env && std::strcmp(env, "neon") == 0 && neon_kernels()) return *neon_kernels();
  if (auto k = avx2_kernels()) return *k;
  if (auto k = neon_kernels()) return *k;
  return scalar_kernels();
}

}  // namespace

const Kernels& kernels() {
  static const Kernels& k = select();
  return k;
}

}  // namespace arcgas::simd
