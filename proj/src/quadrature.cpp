#include "arcgas/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "arcgas/errors.hpp"

namespace arcgas {

Rule gauss_legendre(int n) {
  if (n < 1) throw DomainError("quadrature", "rule size must be positive");
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
    }
    double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    r.w[i] = r.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.x[n / 2] = 0.0;
  return r;
}

Rule gauss_legendre(int n, double lo, double hi) {
  Rule r = gauss_legendre(n);
  double h = 0.5 * (hi - lo), c = 0.5 * (hi + lo);
  for (int i = 0; i < n; ++i) {
    r.x[i] = c + h * r.x[i];
    r.w[i] *= h;
  }
  return r;
}

// Golub-Welsch on the Jacobi matrix
Rule gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw DomainError("quadrature", "rule size must be positive");
  if (!(a > -1.0 && b > -1.0)) throw DomainError("quadrature", "Jacobi exponents must exceed -1");
  Eigen::VectorXd diag(n), off(std::max(n - 1, 1));
  for (int k = 0; k < n; ++k) {
    double s = 2.0 * k + a + b;
    diag(k) = (k == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    if (k + 1 < n) {
      double k1 = k + 1.0, s1 = 2.0 * k1 + a + b;
      double num = 4.0 * k1 * (k1 + a) * (k1 + b) * (k1 + a + b);
      double den = s1 * s1 * (s1 + 1.0) * (s1 - 1.0);
      off(k) = std::sqrt(num / den);
    }
  }
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    J(k, k) = diag(k);
    if (k + 1 < n) J(k, k + 1) = J(k + 1, k) = off(k);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  if (es.info() != Eigen::Success) throw QuadratureError("quadrature", "Jacobi eigensolve failed");
  double mu0 = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                        std::lgamma(a + b + 2.0));
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    r.x[i] = es.eigenvalues()(i);
    double v = es.eigenvectors()(0, i);
    r.w[i] = mu0 * v * v;
  }
  return r;
}

Rule gauss_jacobi01(int n, double p, double q) {
  // x = (1 + y) / 2, weight (1-y)^q (1+y)^p / 2^{p+q+1}
  Rule r = gauss_jacobi(n, q, p);
  double scale = std::exp(-(p + q + 1.0) * std::log(2.0));
  for (int i = 0; i < n; ++i) {
    r.x[i] = 0.5 * (1.0 + r.x[i]);
    r.w[i] *= scale;
  }
  return r;
}

}  // namespace arcgas
