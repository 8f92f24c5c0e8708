#pragma once

#include <vector>

namespace arcgas {

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
  int size() const { return static_cast<int>(x.size()); }
};

// nodes ascending on [-1, 1]
Rule gauss_legendre(int n);
// same rule mapped to [lo, hi]
Rule gauss_legendre(int n, double lo, double hi);

// weight (1 - x)^a (1 + x)^b on [-1, 1], a, b > -1
Rule gauss_jacobi(int n, double a, double b);
// weight x^p (1 - x)^q on [0, 1]
Rule gauss_jacobi01(int n, double p, double q);

}  // namespace arcgas
