#pragma once

#include <json.hpp>
#include <vector>

#include "arcgas/conformal.hpp"

namespace arcgas {

// Chebyshev-T series: f = c0 + sum_{k>=1} coeffs[k-1] T_k
struct ChebSeries {
  double c0 = 0;
  std::vector<double> coeffs;

  int order() const { return static_cast<int>(coeffs.size()); }
  double coeff(int k) const { return k == 0 ? c0 : (k <= order() ? coeffs[k - 1] : 0.0); }
  double eval(double t) const;
  nlohmann::json to_json() const;
};

// v_k = sqrt(k) c_k, k >= 1
struct ScaledVector {
  std::vector<double> entries;

  int size() const { return static_cast<int>(entries.size()); }
  double norm() const;
  static ScaledVector from_cheb(const ChebSeries& s, int N);
};

// z_e(cos theta) = gamma(-cos phi) with sigma(phi) = pi - theta,
// sigma(phi) = (S^{-1}(phi) - S^{-1}(-phi)) / 2
class EquilibriumMap {
public:
  EquilibriumMap() = default;
  EquilibriumMap(const ArcSpec& arc, const LaurentMap& map);

  struct Point {
    double theta = 0, t = 0, phi = 0, t_arc = 0;
    cd z;
    cd z_prime;
    double log_abs_z_prime = 0;
    double m = 0;
  };

  void sigma(double phi, double& s, double& ds) const;
  double phi_of_theta(double theta) const;
  Point at_theta(double theta) const;
  // arc point gamma(-cos phi), phi in [0, pi]; endpoints use the limiting ratio
  Point at_phi(double phi) const;
  // equilibrium parameter of gamma(t_arc)
  double tau_e(double t_arc) const;
  // density of nu_e with respect to arclength at gamma(t_arc)
  double density(double t_arc) const;
  // |z_e'(1)|, |z_e'(-1)|
  double abs_z_prime_end(int sign) const;
  // log |(z_e(s) - z_e(t)) / (s - t)| at theta-angles, diagonal limit included
  double kernel(const Point& p, const Point& q) const;

  const ArcSpec& arc() const { return arc_; }

private:
  ArcSpec arc_{Interval{}};
  PeriodicSeries sinv_;
};

struct TauSamples {
  std::vector<double> t_arc;
  std::vector<double> tau;
  std::vector<double> tau_psi;  // same values via the psi_+- argument formula
};

TauSamples tau_e(const OpenedCurve& curve, const LaurentMap& map, int samples = 513);

struct EquilibriumData {
  int M = 0;
  EquilibriumMap emap;
  std::vector<EquilibriumMap::Point> nodes;  // theta_j = pi (j + 1/2) / M
  std::vector<cd> z_e_nodes;
  std::vector<cd> z_e_prime;
  std::vector<double> density;  // w.r.t. arclength at the nodes
  double cap = 0;
  double ze_prime_p1 = 0, ze_prime_m1 = 0;
};

EquilibriumData z_e_at_cheb_nodes(const OpenedCurve& curve, const LaurentMap& map, int M = 512);

struct DensityCheck {
  std::vector<double> t_arc;
  std::vector<double> density;
  double mass = 0;
  double endpoint_exponent_left = 0;
  double endpoint_exponent_right = 0;
};

DensityCheck equilibrium_density(const EquilibriumData& eq, int samples = 256);

// samples at theta_j = pi (j + 1/2) / M; N < 0 keeps every coefficient
ChebSeries cheb_transform(const std::vector<double>& samples, int N = -1);

struct DVector {
  double d0_intro = 0;  // -(2/pi) int log|z_e'| dt / sqrt(1 - t^2)
  ScaledVector d;
  ChebSeries series;    // Chebyshev series of -log|z_e'|
};

DVector d_vector(const EquilibriumData& eq, int N);
// series of m(z_e(t)) = -1/2 log|Q_+ Q_-| - log(sin phi / sin theta)
ChebSeries m_vector(const EquilibriumData& eq, int N);
ScaledVector f_vector(int N);

struct EndpointValues {
  double p1;  // |z_e'(1)|
  double m1;  // |z_e'(-1)|
};
EndpointValues z_e_prime_endpoints(const EquilibriumData& eq);

// (1/pi) int log|z_e(s) - z_e(t)| ds / sqrt(1 - s^2) at a given t
double frostman_potential(const EquilibriumData& eq, double t);

// the vectors consumed by the Grunsky and energy modules at truncation N
struct ArcVectors {
  int N = 0;
  ScaledVector d, m, f;
  double d0_intro = 0;
  double d_p1 = 0, d_m1 = 0;  // -log|z_e'(+-1)|
  double m_p1 = 0, m_m1 = 0;
  double m_mean = 0;          // plain mean of m, equals -log(2 cap)
};
ArcVectors arc_vectors(const EquilibriumData& eq, int N);

}  // namespace arcgas
