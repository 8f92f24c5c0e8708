#include "arcgas/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "arcgas/errors.hpp"
#include "arcgas/quadrature.hpp"

namespace arcgas {

namespace {

constexpr cd I1{0.0, 1.0};
constexpr double TWO_PI = 2.0 * M_PI;

std::vector<cd> fit_R(const ArcSpec& arc, int mc) {
  std::vector<cd> R(mc);
  for (int j = 0; j < mc; ++j) {
    double t = std::cos(M_PI * (j + 0.5) / mc);
    R[j] = std::sqrt(-arc.chord_plus(t) * arc.chord_minus(t));
  }
  for (int j = 1; j < mc; ++j) {
    double d = std::abs(R[j] - R[j - 1]), s = std::abs(R[j] + R[j - 1]);
    if (d > s) {
      R[j] = -R[j];
      std::swap(d, s);
    }
    if (d > 0.5 * s) throw ResolutionError("open_arc", "square-root branch jumps between adjacent nodes");
  }
  return fourier::cheb_coeffs(R);
}

void fix_global_sign(const ArcSpec& arc, std::vector<cd>& c) {
  const cd z0 = arc.point(0.0);
  cd tg = arc.tangent(0.0);
  tg /= std::abs(tg);
  const cd zoff = z0 - 0.05 * I1 * tg;
  static const Rule gl = gauss_legendre(400);
  cd L = 0.0;
  for (int i = 0; i < gl.size(); ++i) L += gl.w[i] * arc.tangent(gl.x[i]) / (arc.point(gl.x[i]) - zoff);
  const cd soff = zoff + (zoff + 1.0) * std::exp(0.5 * L);
  const cd r0 = fourier::cheb_eval(c, 0.0);
  if (std::abs(z0 - r0 - soff) > std::abs(z0 + r0 - soff))
    for (auto& v : c) v = -v;
}

std::vector<double> unwrap(std::vector<double> a) {
  for (size_t i = 1; i < a.size(); ++i) {
    double d = a[i] - a[i - 1];
    d -= TWO_PI * std::round(d / TWO_PI);
    a[i] = a[i - 1] + d;
  }
  return a;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / v.size();
}

// one Wegmann correction U for the current correspondence S
bool wegmann_update(const OpenedCurve& c, const std::vector<double>& S, std::vector<double>& U) {
  const int n = static_cast<int>(S.size());
  std::vector<cd> z(n), zd(n);
  std::vector<double> gam(n), arg(n), absA(n);
  for (int j = 0; j < n; ++j) {
    const double t = TWO_PI * j / n;
    z[j] = c.eta(S[j]);
    zd[j] = c.eta_prime(S[j]);
    const cd A = std::polar(1.0, t) / zd[j];
    gam[j] = std::imag(z[j] / zd[j]);
    arg[j] = std::arg(A);
    absA[j] = std::abs(A);
  }
  auto alpha = unwrap(arg);
  auto Ka = fourier::conjugate(alpha);
  std::vector<double> rho(n);
  for (int j = 0; j < n; ++j) rho[j] = gam[j] / (absA[j] * std::exp(Ka[j]));
  const double abar = mean(alpha), rbar = mean(rho);
  const double cc = rbar / std::tan(abar);
  std::vector<double> rc(n);
  for (int j = 0; j < n; ++j) rc[j] = rho[j] - rbar;
  auto Krho = fourier::conjugate(rc);
  U.resize(n);
  for (int j = 0; j < n; ++j) {
    const double t = TWO_PI * j / n;
    const cd psi(cc - Krho[j], rho[j]);
    const cd phi = std::exp(-I1 * cd(alpha[j], Ka[j])) * psi;
    U[j] = std::real((std::polar(1.0, t) * phi - z[j]) / zd[j]);
    if (!std::isfinite(U[j])) return false;
  }
  return true;
}

struct InnerResult {
  bool ok = false;
  int iterations = 0;
};

InnerResult solve_inner(const OpenedCurve& c, std::vector<double>& S, const ConformalOptions& opt) {
  const int n = static_cast<int>(S.size());
  std::vector<double> U;
  std::vector<double> trial = S;
  double prev = std::numeric_limits<double>::infinity();
  InnerResult r;
  for (int it = 0; it < opt.max_inner; ++it) {
    if (!wegmann_update(c, trial, U)) return r;
    U = fourier::lowpass(U, n / 4);
    double m = 0.0;
    for (double u : U) m = std::max(m, std::abs(u));
    if (!std::isfinite(m) || m > 1.0) return r;
    for (int j = 0; j < n; ++j) trial[j] += U[j];
    r.iterations = it + 1;
    if (m < opt.tol || (m < opt.stall_tol && m > 0.5 * prev)) {
      S = trial;
      r.ok = true;
      return r;
    }
    prev = m;
  }
  return r;
}

double analytic_defect(const OpenedCurve& c, const std::vector<double>& S) {
  const int n = static_cast<int>(S.size());
  std::vector<cd> z(n);
  for (int j = 0; j < n; ++j) z[j] = c.eta(S[j]);
  auto Z = fourier::fft(z);
  double d = std::abs(Z[0]) / n;
  for (int k = n / 2; k < n; ++k) d = std::max(d, std::abs(Z[k]) / n);
  return d;
}

}  // namespace

cd OpenedCurve::eta(double phi) const {
  const double t = -std::cos(phi);
  return arc.point(t) - std::sin(phi) * R(t);
}

cd OpenedCurve::eta_prime(double phi) const {
  const double t = -std::cos(phi), s = std::sin(phi);
  return arc.tangent(t) * s - std::cos(phi) * R(t) - s * s * fourier::cheb_eval(rp_cheb, t);
}

cd OpenedCurve::q_plus(double t) const {
  return arc.point(t) + std::sqrt(std::max(0.0, 1.0 - t * t)) * R(t);
}

cd OpenedCurve::q_minus(double t) const {
  return arc.point(t) - std::sqrt(std::max(0.0, 1.0 - t * t)) * R(t);
}

OpenedCurve open_arc(const ArcSpec& spec, int M) {
  if (M < 128 || M % 2) throw DomainError("open_arc", "node count must be even and at least 128");
  OpenedCurve c;
  c.arc = spec;
  int mc = 256;
  for (;; mc *= 2) {
    c.r_cheb = fit_R(spec, mc);
    double scale = 0.0, tail = 0.0;
    for (auto& v : c.r_cheb) scale = std::max(scale, std::abs(v));
    for (int k = mc - 8; k < mc; ++k) tail = std::max(tail, std::abs(c.r_cheb[k]));
    if (tail < 1e-15 * scale) break;
    if (mc >= 8192) throw ResolutionError("open_arc", "Chebyshev fit of the square root does not resolve");
  }
  double scale = 0.0;
  for (auto& v : c.r_cheb) scale = std::max(scale, std::abs(v));
  while (c.r_cheb.size() > 2 && std::abs(c.r_cheb.back()) < 1e-18 * scale) c.r_cheb.pop_back();
  fix_global_sign(spec, c.r_cheb);
  c.rp_cheb = fourier::cheb_derivative(c.r_cheb);

  c.theta_nodes.resize(M);
  c.points.resize(M);
  c.side.resize(M);
  c.arc_param.resize(M);
  for (int j = 0; j < M; ++j) {
    const double phi = TWO_PI * j / M;
    c.theta_nodes[j] = phi;
    c.points[j] = c.eta(phi);
    c.arc_param[j] = -std::cos(phi);
    c.side[j] = (j == 0 || j == M / 2) ? 0 : (j < M / 2 ? -1 : +1);
  }
  c.qq_defect = 0.0;
  for (int j = 0; j <= M / 2; ++j) {
    const double t = c.arc_param[j];
    c.qq_defect = std::max(c.qq_defect, std::abs(c.q_plus(t) * c.q_minus(t) - 1.0));
  }
  c.inversion_defect = 0.0;
  for (int i = 0; i < M; ++i) {
    const cd w = 1.0 / c.points[i];
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < M; ++j) best = std::min(best, std::abs(w - c.points[j]));
    c.inversion_defect = std::max(c.inversion_defect, best);
  }
  return c;
}

namespace {

void finish_map(const OpenedCurve& c, LaurentMap& m) {
  const int n = m.N;
  std::vector<double> p(n);
  for (int j = 0; j < n; ++j) p[j] = m.S[j] - TWO_PI * j / n;
  m.s_series = PeriodicSeries::from_samples(p);
  for (int j = 0; j < n; ++j)
    if (!(m.s_prime(TWO_PI * j / n) > 0.0))
      throw TopologyError("exterior_map", "boundary correspondence is not monotone (winding defect)");

  // inverse correspondence on phi_j = 2 pi j / n
  const double s0 = m.S[0];
  std::vector<double> q(n);
  for (int j = 0; j < n; ++j) {
    double phi = TWO_PI * j / n;
    double shift = TWO_PI * std::floor((phi - s0) / TWO_PI);
    double target = phi - shift;  // in [s0, s0 + 2 pi)
    auto it = std::upper_bound(m.S.begin(), m.S.end(), target);
    int hi = static_cast<int>(it - m.S.begin());
    double x;
    if (hi >= n) {
      double sl = m.S[n - 1], sh = m.S[0] + TWO_PI;
      x = TWO_PI * (n - 1) / n + (target - sl) / (sh - sl) * (TWO_PI / n);
    } else {
      int lo = hi - 1;
      x = TWO_PI * lo / n + (target - m.S[lo]) / (m.S[hi] - m.S[lo]) * (TWO_PI / n);
    }
    for (int k = 0; k < 8; ++k) {
      double v, dv;
      m.s_series.eval(x, v, dv);
      double F = x + v - target;
      x -= F / (1.0 + dv);
      if (std::abs(F) < 1e-15) break;
    }
    q[j] = x + shift - phi;
  }
  m.sinv_series = PeriodicSeries::from_samples(q);

  std::vector<cd> f(n);
  for (int j = 0; j < n; ++j) f[j] = c.eta(m.S[j]);
  auto F = fourier::fft(f);
  m.a1 = F[1].real() / n;
  m.residual = std::abs(F[0]) / n;
  for (int k = n / 2; k < n; ++k) m.residual = std::max(m.residual, std::abs(F[k]) / n);
  m.residual = std::max(m.residual, std::abs(F[1].imag()) / n);
  m.cap_coeff = 1.0 / m.a1;

  m.boundary.resize(n);
  for (int j = 0; j < n; ++j) m.boundary[j] = c.eta(-m.S[(n - j) % n]);
  auto G = fourier::fft(m.boundary);
  const int K = n / 4;
  m.coeffs.resize(K + 1);
  m.coeffs[0] = G[0] / double(n);
  for (int k = 1; k <= K; ++k) m.coeffs[k] = G[n - k] / double(n);

  m.tail = 0.0;
  for (int k = n / 4 - 16; k <= n / 4 - 1; ++k) m.tail = std::max(m.tail, std::abs(m.s_series.a[k - 1]));
  for (int k = n / 4 - 16; k <= n / 4 - 1; ++k) m.tail = std::max(m.tail, std::abs(m.s_series.b[k - 1]));
}

}  // namespace

LaurentMap exterior_map(const OpenedCurve& curve, const ConformalOptions& opt) {
  const int n = opt.N;
  if (n < 64 || (n & (n - 1))) throw DomainError("exterior_map", "collocation size must be a power of two >= 64");
  LaurentMap m;
  m.N = n;
  m.S.resize(n);
  for (int j = 0; j < n; ++j) m.S[j] = TWO_PI * j / n + M_PI;

  const int mc_nodes = static_cast<int>(curve.theta_nodes.size());
  if (!curve.arc.is_interval()) {
    double lam = 0.0, h = 0.25;
    while (lam < 1.0) {
      const double ln = std::min(1.0, lam + h);
      const OpenedCurve cl = (ln >= 1.0) ? curve : open_arc(curve.arc.homotopy(ln), std::max(128, mc_nodes));
      std::vector<double> S = m.S;
      auto r = solve_inner(cl, S, opt);
      if (!r.ok) {
        h *= 0.5;
        if (h < 1e-4)
          throw ConvergenceError("exterior_map", "continuation step collapsed at lambda = " + std::to_string(lam));
        continue;
      }
      m.S = S;
      m.iterations += r.iterations;
      m.continuation_steps += 1;
      lam = ln;
      h *= 1.5;
    }
  } else {
    auto r = solve_inner(curve, m.S, opt);
    m.iterations = r.iterations;
  }
  finish_map(curve, m);
  if (!(m.residual <= opt.residual_gate)) {
    double d = analytic_defect(curve, m.S);
    throw ConvergenceError("exterior_map", "boundary residual " + std::to_string(d) + " above gate");
  }
  if (m.tail > opt.tail_gate)
    throw ResolutionError("exterior_map", "correspondence not resolved at N = " + std::to_string(n) +
                                              " (spectral tail " + std::to_string(m.tail) + ")");
  return m;
}

nlohmann::json LaurentMap::to_json() const {
  nlohmann::json j;
  j["N"] = N;
  j["S"] = S;
  j["iterations"] = iterations;
  j["continuation_steps"] = continuation_steps;
  nlohmann::json cs = nlohmann::json::array();
  for (auto& c : coeffs) cs.push_back({c.real(), c.imag()});
  j["coeffs"] = cs;
  j["cap_coeff"] = cap_coeff;
  j["residual"] = residual;
  return j;
}

LaurentMap LaurentMap::from_json(const nlohmann::json& j, const OpenedCurve& curve) {
  LaurentMap m;
  m.N = j.at("N").get<int>();
  m.S = j.at("S").get<std::vector<double>>();
  m.iterations = j.value("iterations", 0);
  m.continuation_steps = j.value("continuation_steps", 0);
  if (static_cast<int>(m.S.size()) != m.N) throw DomainError("exterior_map", "cached correspondence has wrong size");
  finish_map(curve, m);
  return m;
}

double capacity_from_map(const LaurentMap& map) { return 0.5 * map.cap_coeff; }

PsiSamples psi_boundary(const OpenedCurve& curve, const LaurentMap& map, int M) {
  PsiSamples p;
  p.t.resize(M + 1);
  p.plus.resize(M + 1);
  p.minus.resize(M + 1);
  for (int j = 0; j <= M; ++j) {
    const double phi = M_PI * (M - j) / M;  // t = -cos(phi) runs from -1 to 1
    p.t[j] = -std::cos(phi);
    p.minus[j] = std::polar(1.0, -map.sinv(-phi));
    p.plus[j] = std::polar(1.0, -map.sinv(phi));
  }
  (void)curve;
  return p;
}

double loewner_energy(const OpenedCurve& curve, const LaurentMap& map) {
  const int n = map.N;
  std::vector<double> re1(n), im1(n), re2(n), im2(n);
  for (int j = 0; j < n; ++j) {
    const double t = TWO_PI * j / n;
    const cd e = std::polar(1.0, t);
    const cd fp = curve.eta_prime(map.S[j]) * map.s_prime(t) / (I1 * e);
    if (std::abs(fp) < 1e-300) throw ConvergenceError("loewner_energy", "map derivative vanishes on the boundary");
    const cd l1 = std::log(fp), l2 = std::log(curve.eta(map.S[j]) / e);
    re1[j] = l1.real();
    im1[j] = l1.imag();
    re2[j] = l2.real();
    im2[j] = l2.imag();
  }
  im1 = unwrap(im1);
  im2 = unwrap(im2);
  std::vector<cd> F1(n), F2(n);
  for (int j = 0; j < n; ++j) {
    F1[j] = {re1[j], im1[j]};
    F2[j] = {re2[j], im2[j]};
  }
  auto C1 = fourier::fft(F1), C2 = fourier::fft(F2);
  double e = 0.0;
  for (int k = 1; k < n / 2; ++k) {
    const cd c1 = C1[k] / double(n), c2 = C2[k] / double(n);
    e += k * (std::norm(c1) + std::norm(c1 - 2.0 * c2));
  }
  return e + 8.0 * std::log(map.a1);
}

EndpointDerivatives h_prime_at_pm1(const OpenedCurve& curve, const LaurentMap& map) {
  EndpointDerivatives d;
  d.hp1 = map.sinv_prime(M_PI) / std::abs(curve.eta_prime(M_PI));
  d.hm1 = map.sinv_prime(0.0) / std::abs(curve.eta_prime(0.0));
  if (!(std::isfinite(d.hp1) && std::isfinite(d.hm1) && d.hp1 > 0 && d.hm1 > 0))
    throw ConvergenceError("h_prime_at_pm1", "endpoint preimages not located");
  return d;
}

DouglasSeries DouglasSeries::from_samples(const std::vector<double>& u) {
  const int n = static_cast<int>(u.size());
  std::vector<cd> U(u.begin(), u.end());
  U = fourier::fft(U);
  DouglasSeries s;
  s.fourier.resize(n / 2);
  for (int k = 0; k < n / 2; ++k) s.fourier[k] = U[k] / double(n);
  return s;
}

double douglas_energy(const DouglasSeries& series) {
  double e = 0.0;
  for (size_t k = 1; k < series.fourier.size(); ++k) e += 4.0 * k * std::norm(series.fourier[k]);
  return e;
}

}  // namespace arcgas
