#include "arcgas/equilibrium.hpp"

#include <algorithm>
#include <cmath>

#include "arcgas/errors.hpp"
#include "arcgas/quadrature.hpp"

namespace arcgas {

double ChebSeries::eval(double t) const {
  std::vector<double> c(coeffs.size() + 1);
  c[0] = c0;
  std::copy(coeffs.begin(), coeffs.end(), c.begin() + 1);
  return fourier::cheb_eval(c, t);
}

nlohmann::json ChebSeries::to_json() const {
  std::vector<double> all{c0};
  all.insert(all.end(), coeffs.begin(), coeffs.end());
  return all;
}

double ScaledVector::norm() const {
  double s = 0.0;
  for (double v : entries) s += v * v;
  return std::sqrt(s);
}

ScaledVector ScaledVector::from_cheb(const ChebSeries& s, int N) {
  ScaledVector v;
  v.entries.resize(N);
  for (int k = 1; k <= N; ++k) v.entries[k - 1] = std::sqrt(double(k)) * s.coeff(k);
  return v;
}

EquilibriumMap::EquilibriumMap(const ArcSpec& arc, const LaurentMap& map) : arc_(arc), sinv_(map.sinv_series) {}

void EquilibriumMap::sigma(double phi, double& s, double& ds) const {
  double v, dv;
  sinv_.eval_odd(phi, v, dv);
  s = phi + v;
  ds = 1.0 + dv;
}

double EquilibriumMap::phi_of_theta(double theta) const {
  const double target = M_PI - theta;
  double lo = 0.0, hi = M_PI, x = target;
  for (int it = 0; it < 60; ++it) {
    double s, ds;
    sigma(x, s, ds);
    const double F = s - target;
    if (F > 0)
      hi = x;
    else
      lo = x;
    double nx = x - F / ds;
    if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
    if (std::abs(nx - x) < 1e-15) return nx;
    x = nx;
  }
  return x;
}

EquilibriumMap::Point EquilibriumMap::at_theta(double theta) const {
  Point p = at_phi(phi_of_theta(theta));
  p.theta = theta;
  p.t = std::cos(theta);
  return p;
}

EquilibriumMap::Point EquilibriumMap::at_phi(double phi) const {
  Point p;
  p.phi = std::clamp(phi, 0.0, M_PI);
  double s, ds;
  sigma(p.phi, s, ds);
  p.theta = std::clamp(M_PI - s, 0.0, M_PI);
  p.t = std::cos(p.theta);
  p.t_arc = -std::cos(p.phi);
  p.z = arc_.point(p.t_arc);
  const double st = std::sin(p.theta);
  const double ratio = st > 1e-7 ? std::sin(p.phi) / st : 1.0 / ds;
  const cd gp = arc_.tangent(p.t_arc);
  p.z_prime = gp * ratio / ds;
  p.log_abs_z_prime = std::log(std::abs(gp)) + std::log(ratio) - std::log(ds);
  p.m = -0.5 * std::log(std::abs(arc_.chord_plus(p.t_arc) * arc_.chord_minus(p.t_arc))) - std::log(ratio);
  return p;
}

double EquilibriumMap::tau_e(double t_arc) const {
  const double phi = std::acos(std::clamp(-t_arc, -1.0, 1.0));
  double s, ds;
  sigma(phi, s, ds);
  return -std::cos(s);
}

double EquilibriumMap::density(double t_arc) const {
  const double phi = std::acos(std::clamp(-t_arc, -1.0, 1.0));
  double s, ds;
  sigma(phi, s, ds);
  return ds / (M_PI * std::abs(arc_.tangent(t_arc)) * std::sin(phi));
}

double EquilibriumMap::abs_z_prime_end(int sign) const {
  double s, ds;
  sigma(sign > 0 ? M_PI : 0.0, s, ds);
  return std::abs(arc_.tangent(sign > 0 ? 1.0 : -1.0)) / (ds * ds);
}

double EquilibriumMap::kernel(const Point& p, const Point& q) const {
  if (p.theta == q.theta) return p.log_abs_z_prime;
  const double num = std::sin(0.5 * (p.phi + q.phi)) * std::sin(0.5 * (p.phi - q.phi));
  const double den = std::sin(0.5 * (p.theta + q.theta)) * std::sin(0.5 * (p.theta - q.theta));
  return std::log(std::abs(arc_.chord(p.t_arc, q.t_arc))) + std::log(std::abs(num / den));
}

TauSamples tau_e(const OpenedCurve& curve, const LaurentMap& map, int samples) {
  EquilibriumMap em(curve.arc, map);
  TauSamples out;
  out.t_arc.resize(samples);
  out.tau.resize(samples);
  out.tau_psi.resize(samples);
  for (int j = 0; j < samples; ++j) {
    const double phi = M_PI * j / (samples - 1);
    out.t_arc[j] = -std::cos(phi);
    out.tau[j] = em.tau_e(out.t_arc[j]);
    const double am = -map.sinv(-phi), ap = -map.sinv(phi);
    double d = std::fmod(am - ap, 2.0 * M_PI);
    if (d < 0) d += 2.0 * M_PI;
    out.tau_psi[j] = -std::cos(0.5 * d);
  }
  out.tau.front() = out.tau_psi.front() = -1.0;
  out.tau.back() = out.tau_psi.back() = 1.0;
  for (int j = 1; j < samples; ++j)
    if (!(out.tau[j] > out.tau[j - 1]))
      throw ResolutionError("tau_e", "equilibrium parameter not increasing along the arc");
  return out;
}

EquilibriumData z_e_at_cheb_nodes(const OpenedCurve& curve, const LaurentMap& map, int M) {
  EquilibriumData eq;
  eq.M = M;
  eq.emap = EquilibriumMap(curve.arc, map);
  eq.nodes.resize(M);
  eq.z_e_nodes.resize(M);
  eq.z_e_prime.resize(M);
  eq.density.resize(M);
  for (int j = 0; j < M; ++j) {
    const double th = M_PI * (j + 0.5) / M;
    eq.nodes[j] = eq.emap.at_theta(th);
    eq.z_e_nodes[j] = eq.nodes[j].z;
    eq.z_e_prime[j] = eq.nodes[j].z_prime;
    eq.density[j] = eq.emap.density(eq.nodes[j].t_arc);
    if (!std::isfinite(eq.nodes[j].log_abs_z_prime))
      throw ResolutionError("z_e_at_cheb_nodes", "equilibrium parametrization inversion failed");
  }
  for (int j = 1; j < M; ++j)
    if (!(eq.nodes[j].t_arc < eq.nodes[j - 1].t_arc))
      throw ResolutionError("z_e_at_cheb_nodes", "inverted parameters are not monotone");
  eq.cap = capacity_from_map(map);
  eq.ze_prime_p1 = eq.emap.abs_z_prime_end(+1);
  eq.ze_prime_m1 = eq.emap.abs_z_prime_end(-1);
  return eq;
}

DensityCheck equilibrium_density(const EquilibriumData& eq, int samples) {
  DensityCheck d;
  const auto& em = eq.emap;
  const Rule gl = gauss_legendre(samples, 0.0, M_PI);
  d.t_arc.resize(samples);
  d.density.resize(samples);
  for (int i = 0; i < samples; ++i) {
    const double phi = gl.x[i];
    const double t = -std::cos(phi);
    d.t_arc[i] = t;
    d.density[i] = em.density(t);
    d.mass += gl.w[i] * d.density[i] * std::abs(em.arc().tangent(t)) * std::sin(phi);
  }
  auto slope = [&](double sign) {
    // density against distance to the endpoint along the parameter
    const double e1 = 1e-6, e2 = 1e-4;
    const double t1 = sign * (1.0 - e1), t2 = sign * (1.0 - e2);
    return (std::log(em.density(t1)) - std::log(em.density(t2))) / (std::log(e1) - std::log(e2));
  };
  d.endpoint_exponent_left = slope(-1.0);
  d.endpoint_exponent_right = slope(1.0);
  return d;
}

ChebSeries cheb_transform(const std::vector<double>& samples, int N) {
  auto c = fourier::cheb_coeffs(samples);
  const int M = static_cast<int>(samples.size());
  if (N < 0 || N > M - 1) N = M - 1;
  ChebSeries s;
  s.c0 = c[0];
  s.coeffs.assign(c.begin() + 1, c.begin() + 1 + N);
  return s;
}

DVector d_vector(const EquilibriumData& eq, int N) {
  std::vector<double> v(eq.M);
  for (int j = 0; j < eq.M; ++j) v[j] = -eq.nodes[j].log_abs_z_prime;
  DVector out;
  out.series = cheb_transform(v, N);
  out.d0_intro = 2.0 * out.series.c0;
  out.d = ScaledVector::from_cheb(out.series, N);
  return out;
}

ChebSeries m_vector(const EquilibriumData& eq, int N) {
  std::vector<double> v(eq.M);
  for (int j = 0; j < eq.M; ++j) v[j] = eq.nodes[j].m;
  return cheb_transform(v, N);
}

ScaledVector f_vector(int N) {
  ScaledVector f;
  f.entries.resize(N);
  for (int k = 1; k <= N; ++k) f.entries[k - 1] = (k % 2 == 0) ? 2.0 / std::sqrt(double(k)) : 0.0;
  return f;
}

EndpointValues z_e_prime_endpoints(const EquilibriumData& eq) { return {eq.ze_prime_p1, eq.ze_prime_m1}; }

double frostman_potential(const EquilibriumData& eq, double t) {
  const auto p = eq.emap.at_theta(std::acos(std::clamp(t, -1.0, 1.0)));
  double s = 0.0;
  for (const auto& q : eq.nodes) s += eq.emap.kernel(q, p);
  return -std::log(2.0) + s / eq.M;
}

ArcVectors arc_vectors(const EquilibriumData& eq, int N) {
  if (eq.M < 2 * N) throw DomainError("arc_vectors", "need at least 2N Chebyshev samples");
  ArcVectors a;
  a.N = N;
  auto dv = d_vector(eq, N);
  a.d = dv.d;
  a.d0_intro = dv.d0_intro;
  auto ms = m_vector(eq, N);
  a.m = ScaledVector::from_cheb(ms, N);
  a.m_mean = ms.c0;
  a.f = f_vector(N);
  a.d_p1 = -std::log(eq.ze_prime_p1);
  a.d_m1 = -std::log(eq.ze_prime_m1);
  a.m_p1 = -0.5 * std::log(eq.ze_prime_p1);
  a.m_m1 = -0.5 * std::log(eq.ze_prime_m1);
  return a;
}

}  // namespace arcgas
