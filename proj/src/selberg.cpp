#include "arcgas/selberg.hpp"

#include <cmath>

#include "arcgas/errors.hpp"
#include "arcgas/quadrature.hpp"

namespace arcgas {

namespace {

constexpr double GLAISHER = 1.2824271291006226368753425688697917;

// int over -1 < t_1 < ... < t_n < 1 of prod |gamma_i - gamma_j|^beta prod |gamma'| * extra(t)
double ordered_integral(const ArcSpec& arc, int n, double beta, int q,
                        const std::function<double(const double*)>& extra) {
  double total = 0.0;
  if (n == 1) {
    const Rule r = gauss_legendre(q);
    for (int i = 0; i < q; ++i) {
      const double t = r.x[i];
      total += r.w[i] * std::abs(arc.tangent(t)) * extra(&t);
    }
    return total;
  }
  if (n == 2) {
    const Rule r1 = gauss_jacobi(q, beta + 1.0, 0.0);
    const Rule ra = gauss_jacobi01(q, beta, 0.0);
    for (int i = 0; i < q; ++i) {
      const double t1 = r1.x[i], L = 1.0 - t1;
      const double g1 = std::abs(arc.tangent(t1));
      for (int j = 0; j < q; ++j) {
        const double t[2] = {t1, t1 + ra.x[j] * L};
        const double f = std::pow(std::abs(arc.chord(t[0], t[1])), beta) * g1 * std::abs(arc.tangent(t[1]));
        total += r1.w[i] * ra.w[j] * f * extra(t);
      }
    }
    return total;
  }
  if (n == 3) {
    const Rule r1 = gauss_jacobi(q, 3.0 * beta + 2.0, 0.0);
    const Rule rr = gauss_jacobi01(q, 3.0 * beta + 1.0, 0.0);
    const Rule rb = gauss_jacobi01(q, beta, beta);
    for (int i = 0; i < q; ++i) {
      const double t1 = r1.x[i], L = 1.0 - t1;
      const double g1 = std::abs(arc.tangent(t1));
      for (int j = 0; j < q; ++j) {
        const double t3 = t1 + rr.x[j] * L;
        const double g3 = std::abs(arc.tangent(t3));
        const double c13 = std::pow(std::abs(arc.chord(t1, t3)), beta);
        double inner = 0.0;
        for (int k = 0; k < q; ++k) {
          const double t[3] = {t1, t1 + rb.x[k] * (t3 - t1), t3};
          const double f = std::pow(std::abs(arc.chord(t[0], t[1]) * arc.chord(t[1], t[2])), beta) *
                           std::abs(arc.tangent(t[1]));
          inner += rb.w[k] * f * extra(t);
        }
        total += r1.w[i] * rr.w[j] * g1 * g3 * c13 * inner;
      }
    }
    return total;
  }
  throw DomainError("brute force", "only n <= 3 is supported");
}

BruteResult brute(const ArcSpec& arc, int n, double beta, int nodes) {
  if (n < 1 || n > 3) throw DomainError("brute force", "only 1 <= n <= 3 is supported");
  if (!(beta > 0)) throw DomainError("brute force", "beta must be positive");
  auto one = [](const double*) { return 1.0; };
  const double a = ordered_integral(arc, n, beta, nodes, one);
  const double b = ordered_integral(arc, n, beta, nodes + 12, one);
  BruteResult r;
  r.logZ = std::log(b);
  r.error_estimate = std::abs(std::log(a) - std::log(b));
  if (!std::isfinite(r.logZ)) throw QuadratureError("brute force", "non-finite integral");
  return r;
}

}  // namespace

const char* to_string(PartitionRoute r) {
  switch (r) {
    case PartitionRoute::Beta2Product: return "beta2-product";
    case PartitionRoute::SelbergGamma: return "selberg-gamma";
    case PartitionRoute::Asymptotic: return "asymptotic";
    case PartitionRoute::BruteForce: return "brute-force";
  }
  return "?";
}

double logZ_beta2_product(int n) {
  if (n < 1) throw DomainError("selberg", "n must be positive");
  double s = 0.0;
  for (int j = 0; j < n; ++j)
    s += -std::log(j + 0.5) + 2.0 * (j * std::log(2.0) + 2.0 * std::lgamma(j + 1.0) - std::lgamma(2.0 * j + 1.0));
  return s;
}

SelbergValue logZbar_selberg(int n, double beta) {
  if (n < 1) throw DomainError("selberg", "n must be positive");
  if (!(beta > 0)) throw DomainError("selberg", "beta must be positive");
  const double g = beta / 2.0;
  SelbergValue v;
  v.printed = std::lgamma(1.0 + g * n) - std::lgamma(1.0 + g);
  for (int j = 0; j < n; ++j) v.printed += 3.0 * std::lgamma(1.0 + g * j) - std::lgamma(2.0 + (n + j - 1) * g);
  // [0,1] -> [-1,1], the 1/n! of the definition, and Gamma(1+beta/2)^{n-1}
  v.log_correction =
      (n + beta * n * (n - 1) / 2.0) * std::log(2.0) - std::lgamma(n + 1.0) - (n - 1) * std::lgamma(1.0 + g);
  v.calibrated = v.printed + v.log_correction;
  return v;
}

double zeta_prime_minus1() { return 1.0 / 12.0 - std::log(GLAISHER); }

double logZ_asymptotic(int n) {
  if (n < 1) throw DomainError("selberg", "n must be positive");
  return std::log(2.0) / 12.0 + 3.0 * zeta_prime_minus1() - 0.25 * std::log(double(n)) +
         n * std::log(2.0 * M_PI) - double(n) * n * std::log(2.0);
}

BruteResult brute_logZ_interval(int n, double beta, int nodes) { return brute(make_interval(), n, beta, nodes); }

BruteResult brute_logZ_arc(const ArcSpec& arc, int n, double beta, int nodes) { return brute(arc, n, beta, nodes); }

double brute_mean_interval(int n, double beta, const std::function<double(double)>& u, int nodes) {
  const ArcSpec I = make_interval();
  const double Z = ordered_integral(I, n, beta, nodes, [](const double*) { return 1.0; });
  const double S = ordered_integral(I, n, beta, nodes, [&](const double* t) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += u(t[i]);
    return s;
  });
  return S / Z;
}

}  // namespace arcgas
