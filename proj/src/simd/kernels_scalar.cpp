#include <cmath>
#include <limits>

#include "arcgas/simd.hpp"
#include "simd/renorm.hpp"

namespace arcgas::simd {

namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (int l = 0; l < 4; ++l) s[l] += a[i + l] * b[i + l];
  double t = (s[0] + s[2]) + (s[1] + s[3]);
  for (; i < n; ++i) t += a[i] * b[i];
  return t;
}

void symv(const double* A, std::size_t n, const double* x, double* y) {
  for (std::size_t r = 0; r < n; ++r) y[r] = dot(A + r * n, x, n);
}

template <class Ratio>
double lane_log_product(std::size_t n, Ratio ratio, bool squared) {
  double p[4] = {1, 1, 1, 1};
  long e[4] = {0, 0, 0, 0};
  bool zero = false;
  std::size_t i = 0;
  int since = 0;
  for (; i + 4 <= n; i += 4) {
    for (int l = 0; l < 4; ++l) {
      const double r = ratio(i + l);
      zero |= (r == 0.0);
      p[l] *= r;
    }
    if (++since == detail::RENORM_EVERY) {
      for (int l = 0; l < 4; ++l) detail::renorm(p[l], e[l]);
      since = 0;
    }
  }
  double tail = 1.0;
  for (; i < n; ++i) {
    const double r = ratio(i);
    zero |= (r == 0.0);
    tail *= r;
  }
  if (zero) return -std::numeric_limits<double>::infinity();
  return detail::finish(p, e, tail, squared);
}

double log_ratio_real(const double* x, std::size_t n, double xo, double xn) {
  return lane_log_product(n, [&](std::size_t i) { return std::abs((xn - x[i]) / (xo - x[i])); }, false);
}

double log_ratio_complex(const double* re, const double* im, std::size_t n, double wo_re, double wo_im, double wn_re,
                         double wn_im) {
  return lane_log_product(
      n,
      [&](std::size_t i) {
        const double ar = wn_re - re[i], ai = wn_im - im[i];
        const double br = wo_re - re[i], bi = wo_im - im[i];
        return (ar * ar + ai * ai) / (br * br + bi * bi);
      },
      true);
}

const Kernels K{Isa::Scalar, dot, symv, log_ratio_real, log_ratio_complex};

}  // namespace

const Kernels& scalar_kernels() { return K; }

}  // namespace arcgas::simd
