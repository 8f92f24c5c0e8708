#include "arcgas/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace arcgas {
namespace fourier {

namespace {

struct ComplexPlan {
  int n;
  fftw_complex* buf;
  fftw_plan plan;
  ComplexPlan(int n_, int sign) : n(n_) {
    buf = fftw_alloc_complex(n);
    plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE);
  }
  ~ComplexPlan() {
    fftw_destroy_plan(plan);
    fftw_free(buf);
  }
};

struct DctPlan {
  int n;
  double* buf;
  fftw_plan plan;
  explicit DctPlan(int n_) : n(n_) {
    buf = fftw_alloc_real(n);
    plan = fftw_plan_r2r_1d(n, buf, buf, FFTW_REDFT10, FFTW_ESTIMATE);
  }
  ~DctPlan() {
    fftw_destroy_plan(plan);
    fftw_free(buf);
  }
};

std::mutex g_mutex;
std::map<std::pair<int, int>, std::unique_ptr<ComplexPlan>> g_cplans;
std::map<int, std::unique_ptr<DctPlan>> g_dplans;

std::vector<cd> transform(const std::vector<cd>& x, int sign) {
  const int n = static_cast<int>(x.size());
  std::lock_guard<std::mutex> lock(g_mutex);
  auto& slot = g_cplans[{n, sign}];
  if (!slot) slot = std::make_unique<ComplexPlan>(n, sign);
  for (int i = 0; i < n; ++i) {
    slot->buf[i][0] = x[i].real();
    slot->buf[i][1] = x[i].imag();
  }
  fftw_execute(slot->plan);
  std::vector<cd> out(n);
  for (int i = 0; i < n; ++i) out[i] = {slot->buf[i][0], slot->buf[i][1]};
  return out;
}

int freq(int k, int n) { return k <= n / 2 ? k : k - n; }

}  // namespace

std::vector<cd> fft(const std::vector<cd>& x) { return transform(x, FFTW_FORWARD); }

std::vector<cd> ifft(const std::vector<cd>& X) {
  auto out = transform(X, FFTW_BACKWARD);
  const double s = 1.0 / static_cast<double>(X.size());
  for (auto& v : out) v *= s;
  return out;
}

std::vector<double> conjugate(const std::vector<double>& u) {
  const int n = static_cast<int>(u.size());
  std::vector<cd> U(u.begin(), u.end());
  U = fft(U);
  for (int k = 0; k < n; ++k) {
    int f = freq(k, n);
    if (f == 0 || (n % 2 == 0 && k == n / 2))
      U[k] = 0.0;
    else
      U[k] *= cd(0.0, f > 0 ? -1.0 : 1.0);
  }
  auto v = ifft(U);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = v[i].real();
  return out;
}

std::vector<double> lowpass(const std::vector<double>& u, int kmax) {
  const int n = static_cast<int>(u.size());
  std::vector<cd> U(u.begin(), u.end());
  U = fft(U);
  for (int k = 0; k < n; ++k)
    if (std::abs(freq(k, n)) > kmax) U[k] = 0.0;
  auto v = ifft(U);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = v[i].real();
  return out;
}

std::vector<double> cheb_coeffs(const std::vector<double>& samples) {
  const int m = static_cast<int>(samples.size());
  std::vector<double> c(m);
  {
    std::lock_guard<std::mutex> lock(g_mutex);
    auto& slot = g_dplans[m];
    if (!slot) slot = std::make_unique<DctPlan>(m);
    for (int i = 0; i < m; ++i) slot->buf[i] = samples[i];
    fftw_execute(slot->plan);
    for (int i = 0; i < m; ++i) c[i] = slot->buf[i] / m;
  }
  c[0] *= 0.5;
  return c;
}

std::vector<cd> cheb_coeffs(const std::vector<cd>& samples) {
  std::vector<double> re(samples.size()), im(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    re[i] = samples[i].real();
    im[i] = samples[i].imag();
  }
  auto cr = cheb_coeffs(re), ci = cheb_coeffs(im);
  std::vector<cd> c(samples.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = {cr[i], ci[i]};
  return c;
}

cd cheb_eval(const std::vector<cd>& c, double t) {
  cd b1 = 0.0, b2 = 0.0;
  for (size_t k = c.size(); k-- > 1;) {
    cd b0 = 2.0 * t * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + (c.empty() ? cd(0.0) : c[0]);
}

double cheb_eval(const std::vector<double>& c, double t) {
  double b1 = 0.0, b2 = 0.0;
  for (size_t k = c.size(); k-- > 1;) {
    double b0 = 2.0 * t * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + (c.empty() ? 0.0 : c[0]);
}

std::vector<cd> cheb_derivative(const std::vector<cd>& c) {
  const int n = static_cast<int>(c.size());
  if (n < 2) return {0.0};
  std::vector<cd> d(n - 1, 0.0);
  // d_{k-1} = d_{k+1} + 2 k c_k
  std::vector<cd> e(n + 1, 0.0);
  for (int k = n - 1; k >= 1; --k) e[k - 1] = e[k + 1] + 2.0 * double(k) * c[k];
  e[0] *= 0.5;
  for (int k = 0; k < n - 1; ++k) d[k] = e[k];
  return d;
}

}  // namespace fourier

PeriodicSeries PeriodicSeries::from_samples(const std::vector<double>& v) {
  const int n = static_cast<int>(v.size());
  std::vector<cd> V(v.begin(), v.end());
  V = fourier::fft(V);
  PeriodicSeries s;
  const int K = (n - 1) / 2;
  s.a0 = V[0].real() / n;
  s.a.resize(K);
  s.b.resize(K);
  for (int k = 1; k <= K; ++k) {
    cd c = V[k] / double(n);
    s.a[k - 1] = 2.0 * c.real();
    s.b[k - 1] = -2.0 * c.imag();
  }
  return s;
}

void PeriodicSeries::eval(double x, double& v, double& dv) const {
  const double c1 = std::cos(x), s1 = std::sin(x);
  double ck = 1.0, sk = 0.0;
  double val = a0, der = 0.0;
  const int K = order();
  for (int k = 1; k <= K; ++k) {
    double cn = ck * c1 - sk * s1;
    double sn = sk * c1 + ck * s1;
    ck = cn;
    sk = sn;
    val += a[k - 1] * ck + b[k - 1] * sk;
    der += k * (b[k - 1] * ck - a[k - 1] * sk);
    // resync the rotation to bound drift
    if ((k & 255) == 0) {
      ck = std::cos((k)*x);
      sk = std::sin((k)*x);
    }
  }
  v = val;
  dv = der;
}

void PeriodicSeries::eval_odd(double x, double& v, double& dv) const {
  const double c1 = std::cos(x), s1 = std::sin(x);
  double ck = 1.0, sk = 0.0;
  double val = 0.0, der = 0.0;
  const int K = order();
  for (int k = 1; k <= K; ++k) {
    double cn = ck * c1 - sk * s1;
    double sn = sk * c1 + ck * s1;
    ck = cn;
    sk = sn;
    val += b[k - 1] * sk;
    der += k * b[k - 1] * ck;
    if ((k & 255) == 0) {
      ck = std::cos((k)*x);
      sk = std::sin((k)*x);
    }
  }
  v = val;
  dv = der;
}

double PeriodicSeries::value(double x) const {
  double v, dv;
  eval(x, v, dv);
  return v;
}

double PeriodicSeries::deriv(double x) const {
  double v, dv;
  eval(x, v, dv);
  return dv;
}

double PeriodicSeries::tail(int kmin) const {
  double m = 0.0;
  for (int k = std::max(kmin, 1); k <= order(); ++k)
    m = std::max({m, std::abs(a[k - 1]), std::abs(b[k - 1])});
  return m;
}

}  // namespace arcgas
