#pragma once

#include <functional>
#include <string>

#include "arcgas/arcs.hpp"

namespace arcgas {

enum class PartitionRoute { Beta2Product, SelbergGamma, Asymptotic, BruteForce };

struct IntervalPartition {
  int n = 0;
  double beta = 2;
  double logZ = 0;
  PartitionRoute route = PartitionRoute::Beta2Product;
};

const char* to_string(PartitionRoute r);

// log Z_n(I) at beta = 2 from the Legendre product
double logZ_beta2_product(int n);

struct SelbergValue {
  double printed = 0;     // the Gamma-product exactly as displayed
  double calibrated = 0;  // normalized to (1/n!) int_{[-1,1]^n} |Delta|^beta
  double log_correction = 0;
};
SelbergValue logZbar_selberg(int n, double beta);

// (1/12) log 2 + 3 zeta'(-1) - log(n)/4 + n log(2 pi) - n^2 log 2
double logZ_asymptotic(int n);
double zeta_prime_minus1();

// tensor Gauss-Jacobi quadrature of the definition, n <= 3
struct BruteResult {
  double logZ = 0;
  double error_estimate = 0;
};
BruteResult brute_logZ_interval(int n, double beta, int nodes = 60);

// <sum_mu u(x_mu)> under the interval gas, n <= 3
double brute_mean_interval(int n, double beta, const std::function<double(double)>& u, int nodes = 60);

// log Z_n(gamma) with arclength measure, n <= 3
BruteResult brute_logZ_arc(const ArcSpec& arc, int n, double beta, int nodes = 60);

}  // namespace arcgas
