#pragma once

#include <functional>
#include <json.hpp>

#include "arcgas/grunsky.hpp"

namespace arcgas {

struct EnergyReport {
  double cap = 0;            // g'(inf) / 2
  double cap_frostman = 0;   // exp of the Frostman potential
  double cap_a00 = 0;        // exp(-2 a_00) / 2
  double IL = 0;
  double hp1 = 0, hm1 = 0;
  double JA_geometric = 0;
  double JA_spectral = 0;
  double JF_cheb = 0;
  double JF_dirichlet = 0;
  double kappa = 0, lambda_min = 0, lambda_max = 0;
  double logdet = 0, logdet_error = 0;
  double bf_residual = 0;
  double endpoint_identity_p1 = 0, endpoint_identity_m1 = 0;  // |z_e'(+-1)| |h'(+-1)|^2
  double map_residual = 0;
  int N = 0, quad_M = 0, conformal_N = 0;

  nlohmann::json to_json() const;
};

double jA_geometric(double IL, const EndpointDerivatives& hp);
double jA_spectral(const GrunskyMatrix& B);
// uses B f = m so that no f-quadratic form is truncated directly
double jF_cheb(const GrunskyMatrix& B, const ArcVectors& v);

// Dirichlet energy in C \ gamma of a function on the arc, by transport to the circle
double transported_dirichlet(const LaurentMap& map, const EquilibriumMap& emap,
                             const std::function<double(const EquilibriumMap::Point&)>& u);
double jF_dirichlet(const LaurentMap& map, const EquilibriumData& eq, const EndpointDerivatives& hp,
                    double d0_intro);

// (sqrt(beta/2) - sqrt(2/beta))^2 / 8
double jf_coefficient(double beta);
double free_energy_prediction(double JA, double JF, double beta);

// boundary-term variants of M[u] that differ in the g_0 coefficient
enum class MVariant { Intro, LemmaMinusG0, ProofPlusG0, IntervalDisplay };
const char* to_string(MVariant v);

struct CltParams {
  double variance = 0;
  double mean_shift = 0;
};

CltParams clt_params(const ChebSeries& u, const GrunskyMatrix& B, const ArcVectors& v, double beta,
                     MVariant variant = MVariant::Intro);

struct Thm51Terms {
  double n_g0 = 0;
  double quadratic = 0;    // (1/4beta) g_b^t A g_b
  double f_linear = 0;     // (1/2beta)(beta/2 - 1) f^t A g_b
  double f_quadratic = 0;  // -(1/4beta)(beta/2 - 1)^2 f^t A B f
  double total = 0;
  double A_s = 0;          // A_s[g] at the requested s
};

Thm51Terms thm51_exponent(const ChebSeries& g, const GrunskyMatrix& B, const ArcVectors& v, double beta, double s,
                          int n);

struct PredictionReport {
  double beta = 2;
  double leading_n2 = 0;  // coefficient multiplying n^2 log(2 cap)
  double leading_n = 0;
  double log_2cap = 0;
  double JA = 0, JF = 0;
  double jf_coeff = 0;
  double constant = 0;
  bool has_u = false;
  CltParams clt;
  Thm51Terms thm51;

  nlohmann::json to_json() const;
};

PredictionReport predict(const EnergyReport& e, const GrunskyMatrix& B, const ArcVectors& v, double beta,
                         const ChebSeries* u = nullptr);

}  // namespace arcgas
