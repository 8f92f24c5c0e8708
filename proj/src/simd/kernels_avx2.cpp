#include <immintrin.h>

#include <cstdint>
#include <limits>

#include "arcgas/simd.hpp"
#include "simd/renorm.hpp"

namespace arcgas::simd {

namespace {

double hsum(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return (t[0] + t[2]) + (t[1] + t[3]);
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d s = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) s = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s);
  double t = hsum(s);
  for (; i < n; ++i) t += a[i] * b[i];
  return t;
}

void symv(const double* A, std::size_t n, const double* x, double* y) {
  std::size_t r = 0;
  // two rows at a time share the x loads
  for (; r + 2 <= n; r += 2) {
    const double* a0 = A + r * n;
    const double* a1 = a0 + n;
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
      const __m256d xv = _mm256_loadu_pd(x + i);
      s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a0 + i), xv, s0);
      s1 = _mm256_fmadd_pd(_mm256_loadu_pd(a1 + i), xv, s1);
    }
    double t0 = hsum(s0), t1 = hsum(s1);
    for (; i < n; ++i) {
      t0 += a0[i] * x[i];
      t1 += a1[i] * x[i];
    }
    y[r] = t0;
    y[r + 1] = t1;
  }
  for (; r < n; ++r) y[r] = dot(A + r * n, x, n);
}

// frexp on 4 positive normal lanes: mantissa in [0.5, 1), exponent added to e
inline __m256d renorm(__m256d p, __m256i& e) {
  const __m256i bits = _mm256_castpd_si256(p);
  const __m256i ex = _mm256_sub_epi64(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(1022));
  e = _mm256_add_epi64(e, ex);
  const __m256i mant = _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
                                       _mm256_set1_epi64x(0x3FE0000000000000LL));
  return _mm256_castsi256_pd(mant);
}

template <class Load, class Ratio>
double lane_log_product(std::size_t n, Load load, Ratio ratio, bool squared) {
  __m256d p = _mm256_set1_pd(1.0);
  __m256i e = _mm256_setzero_si256();
  __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  int since = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = load(i);
    zero = _mm256_or_pd(zero, _mm256_cmp_pd(r, _mm256_setzero_pd(), _CMP_EQ_OQ));
    p = _mm256_mul_pd(p, r);
    if (++since == detail::RENORM_EVERY) {
      p = renorm(p, e);
      since = 0;
    }
  }
  double tail = 1.0;
  bool hit = _mm256_movemask_pd(zero) != 0;
  for (; i < n; ++i) {
    const double r = ratio(i);
    hit |= (r == 0.0);
    tail *= r;
  }
  if (hit) return -std::numeric_limits<double>::infinity();
  alignas(32) double pl[4];
  alignas(32) std::int64_t el[4];
  _mm256_store_pd(pl, p);
  _mm256_store_si256(reinterpret_cast<__m256i*>(el), e);
  long ee[4] = {long(el[0]), long(el[1]), long(el[2]), long(el[3])};
  return detail::finish(pl, ee, tail, squared);
}

double log_ratio_real(const double* x, std::size_t n, double xo, double xn) {
  const __m256d vo = _mm256_set1_pd(xo), vn = _mm256_set1_pd(xn);
  const __m256d sign = _mm256_set1_pd(-0.0);
  return lane_log_product(
      n,
      [&](std::size_t i) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        return _mm256_andnot_pd(sign, _mm256_div_pd(_mm256_sub_pd(vn, xv), _mm256_sub_pd(vo, xv)));
      },
      [&](std::size_t i) { return std::abs((xn - x[i]) / (xo - x[i])); }, false);
}

double log_ratio_complex(const double* re, const double* im, std::size_t n, double wo_re, double wo_im, double wn_re,
                         double wn_im) {
  const __m256d ore = _mm256_set1_pd(wo_re), oim = _mm256_set1_pd(wo_im);
  const __m256d nre = _mm256_set1_pd(wn_re), nim = _mm256_set1_pd(wn_im);
  return lane_log_product(
      n,
      [&](std::size_t i) {
        const __m256d r = _mm256_loadu_pd(re + i), m = _mm256_loadu_pd(im + i);
        const __m256d ar = _mm256_sub_pd(nre, r), ai = _mm256_sub_pd(nim, m);
        const __m256d br = _mm256_sub_pd(ore, r), bi = _mm256_sub_pd(oim, m);
        const __m256d num = _mm256_add_pd(_mm256_mul_pd(ar, ar), _mm256_mul_pd(ai, ai));
        const __m256d den = _mm256_add_pd(_mm256_mul_pd(br, br), _mm256_mul_pd(bi, bi));
        return _mm256_div_pd(num, den);
      },
      [&](std::size_t i) {
        const double ar = wn_re - re[i], ai = wn_im - im[i];
        const double br = wo_re - re[i], bi = wo_im - im[i];
        return (ar * ar + ai * ai) / (br * br + bi * bi);
      },
      true);
}

const Kernels K{Isa::Avx2, dot, symv, log_ratio_real, log_ratio_complex};

}  // namespace

const Kernels* avx2_kernels_impl() { return &K; }

}  // namespace arcgas::simd
