#pragma once

#include <json.hpp>
#include <vector>

#include "arcgas/arcs.hpp"
#include "arcgas/fourier.hpp"

namespace arcgas {

// eta(phi) = gamma(-cos phi) - sin(phi) R(-cos phi), R^2 = -Q_+ Q_-.
// phi in (0, pi) traces q_- (right of the -1 -> 1 traversal), phi in (pi, 2 pi) traces q_+.
struct OpenedCurve {
  ArcSpec arc;
  std::vector<cd> r_cheb;
  std::vector<cd> rp_cheb;

  std::vector<double> theta_nodes;
  std::vector<cd> points;
  std::vector<int> side;  // +1 left sheet, -1 right sheet, 0 endpoint
  std::vector<double> arc_param;
  double qq_defect = 0;          // max |q_+ q_- - 1|
  double inversion_defect = 0;   // max nearest-sample distance of 1/w

  cd R(double t) const { return fourier::cheb_eval(r_cheb, t); }
  cd eta(double phi) const;
  cd eta_prime(double phi) const;
  cd q_plus(double t) const;
  cd q_minus(double t) const;
};

OpenedCurve open_arc(const ArcSpec& spec, int M = 512);

struct ConformalOptions {
  int N = 2048;
  double tol = 1e-13;
  double stall_tol = 1e-10;
  int max_inner = 40;
  double residual_gate = 1e-11;
  double tail_gate = 1e-10;
};

// Interior map f of eta with f(0) = 0, f'(0) > 0, f(e^{it}) = eta(S(t)).
// The exterior map is g = j o f o j, j(w) = 1/w, so g(e^{i theta}) = eta(-S(-theta)).
struct LaurentMap {
  int N = 0;
  std::vector<double> S;
  PeriodicSeries s_series;     // S(t) - t
  PeriodicSeries sinv_series;  // S^{-1}(phi) - phi
  double a1 = 1;               // f'(0)
  double cap_coeff = 1;        // g'(infinity)
  std::vector<cd> coeffs;      // c_0, c_{-1}, ..., c_{-K}
  std::vector<cd> boundary;    // g(e^{i theta_j})
  double residual = 0;
  double tail = 0;
  int iterations = 0;
  int continuation_steps = 0;

  double sinv(double phi) const { return phi + sinv_series.value(phi); }
  double sinv_prime(double phi) const { return 1.0 + sinv_series.deriv(phi); }
  double s_prime(double t) const { return 1.0 + s_series.deriv(t); }

  nlohmann::json to_json() const;
  // rebuilds the derived series from the stored correspondence
  static LaurentMap from_json(const nlohmann::json& j, const OpenedCurve& curve);
};

LaurentMap exterior_map(const OpenedCurve& curve, const ConformalOptions& opt = {});

double capacity_from_map(const LaurentMap& map);

struct PsiSamples {
  std::vector<double> t;
  std::vector<cd> plus;
  std::vector<cd> minus;
};

// psi_+ = h o q_+, psi_- = h o q_- at gamma(t) for M + 1 values of t from -1 to 1
PsiSamples psi_boundary(const OpenedCurve& curve, const LaurentMap& map, int M = 256);

double loewner_energy(const OpenedCurve& curve, const LaurentMap& map);

struct EndpointDerivatives {
  double hp1;  // |h'(1)|
  double hm1;  // |h'(-1)|
};

EndpointDerivatives h_prime_at_pm1(const OpenedCurve& curve, const LaurentMap& map);

// complex Fourier coefficients c_0..c_K of a real function on the circle
struct DouglasSeries {
  std::vector<cd> fourier;
  static DouglasSeries from_samples(const std::vector<double>& u);
};

// sum_k 4 k |c_k|^2, so that cos(k theta) has energy k
double douglas_energy(const DouglasSeries& series);

}  // namespace arcgas
