#include <arm_neon.h>

#include <cmath>
#include <cstdint>
#include <limits>

#include "arcgas/simd.hpp"
#include "simd/renorm.hpp"

namespace arcgas::simd {

namespace {

// lanes {0,1} live in lo, {2,3} in hi to keep the scalar lane order
double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t lo = vdupq_n_f64(0.0), hi = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    lo = vfmaq_f64(lo, vld1q_f64(a + i), vld1q_f64(b + i));
    hi = vfmaq_f64(hi, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double t = (vgetq_lane_f64(lo, 0) + vgetq_lane_f64(hi, 0)) + (vgetq_lane_f64(lo, 1) + vgetq_lane_f64(hi, 1));
  for (; i < n; ++i) t += a[i] * b[i];
  return t;
}

void symv(const double* A, std::size_t n, const double* x, double* y) {
  for (std::size_t r = 0; r < n; ++r) y[r] = dot(A + r * n, x, n);
}

inline float64x2_t renorm(float64x2_t p, int64x2_t& e) {
  const uint64x2_t bits = vreinterpretq_u64_f64(p);
  const int64x2_t ex = vsubq_s64(vreinterpretq_s64_u64(vshrq_n_u64(bits, 52)), vdupq_n_s64(1022));
  e = vaddq_s64(e, ex);
  const uint64x2_t mant =
      vorrq_u64(vandq_u64(bits, vdupq_n_u64(0x000FFFFFFFFFFFFFULL)), vdupq_n_u64(0x3FE0000000000000ULL));
  return vreinterpretq_f64_u64(mant);
}

template <class Load, class Ratio>
double lane_log_product(std::size_t n, Load load, Ratio ratio, bool squared) {
  float64x2_t p0 = vdupq_n_f64(1.0), p1 = vdupq_n_f64(1.0);
  int64x2_t e0 = vdupq_n_s64(0), e1 = vdupq_n_s64(0);
  uint64x2_t zero = vdupq_n_u64(0);
  std::size_t i = 0;
  int since = 0;
  for (; i + 4 <= n; i += 4) {
    float64x2_t r0, r1;
    load(i, r0, r1);
    zero = vorrq_u64(zero, vorrq_u64(vceqzq_f64(r0), vceqzq_f64(r1)));
    p0 = vmulq_f64(p0, r0);
    p1 = vmulq_f64(p1, r1);
    if (++since == detail::RENORM_EVERY) {
      p0 = renorm(p0, e0);
      p1 = renorm(p1, e1);
      since = 0;
    }
  }
  double tail = 1.0;
  bool hit = (vgetq_lane_u64(zero, 0) | vgetq_lane_u64(zero, 1)) != 0;
  for (; i < n; ++i) {
    const double r = ratio(i);
    hit |= (r == 0.0);
    tail *= r;
  }
  if (hit) return -std::numeric_limits<double>::infinity();
  const double pl[4] = {vgetq_lane_f64(p0, 0), vgetq_lane_f64(p0, 1), vgetq_lane_f64(p1, 0), vgetq_lane_f64(p1, 1)};
  const long el[4] = {long(vgetq_lane_s64(e0, 0)), long(vgetq_lane_s64(e0, 1)), long(vgetq_lane_s64(e1, 0)),
                      long(vgetq_lane_s64(e1, 1))};
  return detail::finish(pl, el, tail, squared);
}

double log_ratio_real(const double* x, std::size_t n, double xo, double xn) {
  const float64x2_t vo = vdupq_n_f64(xo), vn = vdupq_n_f64(xn);
  return lane_log_product(
      n,
      [&](std::size_t i, float64x2_t& r0, float64x2_t& r1) {
        const float64x2_t a = vld1q_f64(x + i), b = vld1q_f64(x + i + 2);
        r0 = vabsq_f64(vdivq_f64(vsubq_f64(vn, a), vsubq_f64(vo, a)));
        r1 = vabsq_f64(vdivq_f64(vsubq_f64(vn, b), vsubq_f64(vo, b)));
      },
      [&](std::size_t i) { return std::abs((xn - x[i]) / (xo - x[i])); }, false);
}

double log_ratio_complex(const double* re, const double* im, std::size_t n, double wo_re, double wo_im, double wn_re,
                         double wn_im) {
  auto pair = [&](const double* r, const double* m) {
    const float64x2_t vr = vld1q_f64(r), vm = vld1q_f64(m);
    const float64x2_t ar = vsubq_f64(vdupq_n_f64(wn_re), vr), ai = vsubq_f64(vdupq_n_f64(wn_im), vm);
    const float64x2_t br = vsubq_f64(vdupq_n_f64(wo_re), vr), bi = vsubq_f64(vdupq_n_f64(wo_im), vm);
    return vdivq_f64(vaddq_f64(vmulq_f64(ar, ar), vmulq_f64(ai, ai)), vaddq_f64(vmulq_f64(br, br), vmulq_f64(bi, bi)));
  };
  return lane_log_product(
      n,
      [&](std::size_t i, float64x2_t& r0, float64x2_t& r1) {
        r0 = pair(re + i, im + i);
        r1 = pair(re + i + 2, im + i + 2);
      },
      [&](std::size_t i) {
        const double ar = wn_re - re[i], ai = wn_im - im[i];
        const double br = wo_re - re[i], bi = wo_im - im[i];
        return (ar * ar + ai * ai) / (br * br + bi * bi);
      },
      true);
}

const Kernels K{Isa::Neon, dot, symv, log_ratio_real, log_ratio_complex};

}  // namespace

const Kernels* neon_kernels_impl() { return &K; }

}  // namespace arcgas::simd
