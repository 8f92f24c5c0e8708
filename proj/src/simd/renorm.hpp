#pragma once

#include <cmath>

namespace arcgas::simd::detail {

// internal linkage: each ISA translation unit keeps its own copy
namespace {

// ratios stay within ~1e16 for distinct ordered points, so 4 per lane cannot overflow
constexpr int RENORM_EVERY = 4;

inline void renorm(double& p, long& e) {
  int k;
  p = std::frexp(p, &k);
  e += k;
}

inline double finish(const double* p, const long* e, double tail, bool squared) {
  double s = std::log(tail);
  long ex = 0;
  for (int l = 0; l < 4; ++l) {
    s += std::log(p[l]);
    ex += e[l];
  }
  s += double(ex) * M_LN2;
  return squared ? 0.5 * s : s;
}

}  // namespace

}  // namespace arcgas::simd::detail
