#pragma once

#include <complex>
#include <vector>

namespace arcgas {

using cd = std::complex<double>;

namespace fourier {

// X_k = sum_j x_j exp(-2 pi i j k / N)
std::vector<cd> fft(const std::vector<cd>& x);
// inverse including the 1/N factor
std::vector<cd> ifft(const std::vector<cd>& X);

// periodic conjugate function of real samples on 2 pi j / N (multiplier -i sign k)
std::vector<double> conjugate(const std::vector<double>& u);
// zero every mode with |k| > kmax
std::vector<double> lowpass(const std::vector<double>& u, int kmax);

// samples f(cos theta_j), theta_j = pi (j + 1/2) / M  ->  c with
// f = c[0] + sum_{k>=1} c[k] T_k, c[0] the plain mean
std::vector<double> cheb_coeffs(const std::vector<double>& samples);
std::vector<cd> cheb_coeffs(const std::vector<cd>& samples);

// Clenshaw evaluation of sum_k c[k] T_k(t)
cd cheb_eval(const std::vector<cd>& c, double t);
double cheb_eval(const std::vector<double>& c, double t);
std::vector<cd> cheb_derivative(const std::vector<cd>& c);

}  // namespace fourier

// real trigonometric series a0 + sum_k (a_k cos kx + b_k sin kx), k = 1..K
struct PeriodicSeries {
  double a0 = 0.0;
  std::vector<double> a, b;

  // samples on x_j = 2 pi j / N; the Nyquist mode is dropped
  static PeriodicSeries from_samples(const std::vector<double>& v);

  int order() const { return static_cast<int>(a.size()); }
  double value(double x) const;
  double deriv(double x) const;
  // value and derivative together
  void eval(double x, double& v, double& dv) const;
  // odd part (f(x) - f(-x)) / 2 and its derivative
  void eval_odd(double x, double& v, double& dv) const;
  // largest |a_k|, |b_k| over k >= kmin
  double tail(int kmin) const;
};

}  // namespace arcgas
