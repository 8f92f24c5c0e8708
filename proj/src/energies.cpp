#include "arcgas/energies.hpp"

#include <cmath>

#include "arcgas/errors.hpp"

namespace arcgas {

namespace {

ScaledVector scaled(const ChebSeries& u, int N) { return ScaledVector::from_cheb(u, N); }

// f^t d through the endpoint values: 2 sum_{k even} d_k
double f_dot_d(const ArcVectors& v) { return v.d_p1 + v.d_m1 - v.d0_intro; }
double f_dot_m(const ArcVectors& v) { return v.m_p1 + v.m_m1 - 2.0 * v.m_mean; }

double f_dot(const ScaledVector& f, const ScaledVector& g) {
  double s = 0.0;
  for (int k = 0; k < std::min(f.size(), g.size()); ++k) s += f.entries[k] * g.entries[k];
  return s;
}

}  // namespace

double jA_geometric(double IL, const EndpointDerivatives& hp) { return 0.5 * IL - 3.0 * std::log(hp.hp1 * hp.hm1); }

double jA_spectral(const GrunskyMatrix& B) { return -12.0 * fredholm_logdet(B).logdet; }

double jF_cheb(const GrunskyMatrix& B, const ArcVectors& v) {
  if (v.N != B.N) throw DomainError("jF_cheb", "vector truncation does not match the operator");
  const double dAd = quad_form(B, v.d, v.d);
  const double mAd = quad_form(B, v.m, v.d);
  const double mAm = quad_form(B, v.m, v.m);
  return dAd + 2.0 * (f_dot_d(v) - mAd) - (f_dot_m(v) - mAm);
}

double transported_dirichlet(const LaurentMap& map, const EquilibriumMap& emap,
                             const std::function<double(const EquilibriumMap::Point&)>& u) {
  std::vector<double> vals(map.N);
  for (int k = 0; k < map.N; ++k) {
    const double phi = std::abs(std::remainder(map.S[k], 2.0 * M_PI));
    vals[k] = u(emap.at_phi(phi));
  }
  return douglas_energy(DouglasSeries::from_samples(vals));
}

double jF_dirichlet(const LaurentMap& map, const EquilibriumData& eq, const EndpointDerivatives& hp,
                    double d0_intro) {
  const double D = transported_dirichlet(map, eq.emap, [](const EquilibriumMap::Point& p) {
    return -p.log_abs_z_prime - p.m;
  });
  return D + 3.0 * std::log(hp.hp1 * hp.hm1) - 2.0 * (d0_intro + std::log(2.0 * eq.cap));
}

double jf_coefficient(double beta) {
  const double b = std::sqrt(beta / 2.0) - std::sqrt(2.0 / beta);
  return b * b / 8.0;
}

double free_energy_prediction(double JA, double JF, double beta) { return JA / 24.0 + jf_coefficient(beta) * JF; }

const char* to_string(MVariant v) {
  switch (v) {
    case MVariant::Intro: return "intro";
    case MVariant::LemmaMinusG0: return "lemma-minus-g0";
    case MVariant::ProofPlusG0: return "proof-plus-g0";
    case MVariant::IntervalDisplay: return "interval-display";
  }
  return "?";
}

CltParams clt_params(const ChebSeries& u, const GrunskyMatrix& B, const ArcVectors& v, double beta, MVariant variant) {
  if (!(beta > 0)) throw DomainError("clt_params", "beta must be positive");
  const auto g = scaled(u, B.N);
  CltParams p;
  p.variance = quad_form(B, g, g) / (2.0 * beta);
  const double dAg = quad_form(B, v.d, g);
  const double mAg = quad_form(B, v.m, g);
  const double ends = u.eval(1.0) + u.eval(-1.0);
  const double g0 = u.c0;
  const double pref = (beta / 2.0 - 1.0) / (2.0 * beta);
  switch (variant) {
    case MVariant::Intro: p.mean_shift = pref * (dAg - mAg + ends - 2.0 * g0); break;
    case MVariant::LemmaMinusG0: p.mean_shift = pref * (dAg - mAg + ends - g0); break;
    case MVariant::ProofPlusG0: p.mean_shift = pref * (dAg - mAg + ends + g0); break;
    case MVariant::IntervalDisplay:
      p.mean_shift = pref * (2.0 / beta - 1.0) * (0.25 * ends - 0.5 * g0);
      break;
  }
  return p;
}

Thm51Terms thm51_exponent(const ChebSeries& gs, const GrunskyMatrix& B, const ArcVectors& v, double beta, double s,
                          int n) {
  const auto g = scaled(gs, B.N);
  const double c = beta / 2.0 - 1.0;
  ScaledVector gb = g;
  for (int k = 0; k < gb.size(); ++k) gb.entries[k] += c * v.d.entries[k];
  const double fg = f_dot(v.f, g);
  const double fgb = fg + c * f_dot_d(v);
  Thm51Terms t;
  t.n_g0 = n * gs.c0;
  t.quadratic = quad_form(B, gb, gb) / (4.0 * beta);
  t.f_linear = c / (2.0 * beta) * (fgb - quad_form(B, v.m, gb));
  t.f_quadratic = -c * c / (4.0 * beta) * (f_dot_m(v) - quad_form(B, v.m, v.m));
  t.total = t.n_g0 + t.quadratic + t.f_linear + t.f_quadratic;
  // (sd + f)^t (I + sB)^{-1} g with f^t (I+sB)^{-1} g = f^t g - s m^t (I+sB)^{-1} g
  const double sdAg = s * quad_form(B, v.d, g, s);
  const double fAg = fg - s * quad_form(B, v.m, g, s);
  t.A_s = quad_form(B, g, g, s) / (4.0 * beta) + 0.25 * (1.0 - 2.0 / beta) * (sdAg + fAg);
  return t;
}

nlohmann::json EnergyReport::to_json() const {
  return {{"cap", cap},
          {"cap_frostman", cap_frostman},
          {"cap_a00", cap_a00},
          {"IL", IL},
          {"hp1", hp1},
          {"hm1", hm1},
          {"JA_geometric", JA_geometric},
          {"JA_spectral", JA_spectral},
          {"JF_cheb", JF_cheb},
          {"JF_dirichlet", JF_dirichlet},
          {"kappa", kappa},
          {"lambda_min", lambda_min},
          {"lambda_max", lambda_max},
          {"logdet", logdet},
          {"logdet_error", logdet_error},
          {"bf_residual", bf_residual},
          {"endpoint_identity_p1", endpoint_identity_p1},
          {"endpoint_identity_m1", endpoint_identity_m1},
          {"map_residual", map_residual},
          {"N", N},
          {"quad_M", quad_M},
          {"conformal_N", conformal_N}};
}

nlohmann::json PredictionReport::to_json() const {
  nlohmann::json j = {{"beta", beta},
                      {"leading_n2", leading_n2},
                      {"leading_n", leading_n},
                      {"log_2cap", log_2cap},
                      {"JA", JA},
                      {"JF", JF},
                      {"jf_coefficient", jf_coeff},
                      {"constant", constant}};
  if (has_u) {
    j["clt"] = {{"variance", clt.variance}, {"mean_shift", clt.mean_shift}};
    j["thm51"] = {{"n_g0", thm51.n_g0},
                  {"quadratic", thm51.quadratic},
                  {"f_linear", thm51.f_linear},
                  {"f_quadratic", thm51.f_quadratic},
                  {"total", thm51.total},
                  {"A_s", thm51.A_s}};
  }
  return j;
}

PredictionReport predict(const EnergyReport& e, const GrunskyMatrix& B, const ArcVectors& v, double beta,
                         const ChebSeries* u) {
  PredictionReport p;
  p.beta = beta;
  p.leading_n2 = beta / 2.0;
  p.leading_n = 1.0 - beta / 2.0;
  p.log_2cap = std::log(2.0 * e.cap);
  p.JA = e.JA_spectral;
  p.JF = e.JF_cheb;
  p.jf_coeff = jf_coefficient(beta);
  p.constant = free_energy_prediction(p.JA, p.JF, beta);
  if (u) {
    p.has_u = true;
    p.clt = clt_params(*u, B, v, beta);
    p.thm51 = thm51_exponent(*u, B, v, beta, 1.0, 0);
  }
  return p;
}

}  // namespace arcgas
