#include "arcgas/msign.hpp"

#include <algorithm>
#include <cmath>

#include "arcgas/errors.hpp"
#include "arcgas/selberg.hpp"

namespace arcgas {

double kadell_mean_sum_x2(int n, double beta) {
  if (n < 1) throw DomainError("kadell", "n must be positive");
  if (!(beta > 0)) throw DomainError("kadell", "beta must be positive");
  // y = (1 + x) / 2 has the Selberg density with a = b = 1, gamma = beta / 2
  const double g = beta / 2.0, a = 1.0, b = 1.0;
  const double N = n;
  const double Ee1 = N * (a + (N - 1) * g) / (a + b + 2 * (N - 1) * g);
  double Ee2 = N * (N - 1) / 2.0;
  for (int i = 1; i <= 2; ++i) Ee2 *= (a + (N - i) * g) / (a + b + (2 * N - i - 1) * g);
  // Jack P_(2) at alpha = 1/g is p_2 + c e_2 with c = 2 / (1 + alpha)
  const double c = 2.0 / (1.0 + 1.0 / g);
  const double P1 = N + c * N * (N - 1) / 2.0;
  const double EP = P1 * (a + (N - 1) * g) * (a + (N - 1) * g + 1) /
                    ((a + b + (2 * N - 2) * g) * (a + b + (2 * N - 2) * g + 1));
  const double Ep2 = EP - c * Ee2;
  return 4.0 * Ep2 - 4.0 * Ee1 + N;
}

nlohmann::json MSignReport::to_json() const {
  nlohmann::json cands = nlohmann::json::array();
  for (const auto& c : candidates)
    cands.push_back({{"variant", to_string(c.variant)}, {"predicted", c.predicted}, {"deviation", c.deviation}});
  nlohmann::json j = {{"beta", beta},
                      {"statistic", "sum x^2 - n/2"},
                      {"small_n", small_n},
                      {"exact_small", exact_small},
                      {"quadrature_small", quadrature_small},
                      {"small_agreement", small_agreement},
                      {"limit", limit},
                      {"candidates", cands},
                      {"selected", to_string(selected)},
                      {"selection_margin", selection_margin}};
  if (has_mc)
    j["monte_carlo"] = {{"n", mc_n}, {"shift", mc_shift}, {"se", mc_se}, {"exact_at_n", mc_exact}};
  return j;
}

MSignReport resolve_msign(const GrunskyMatrix& B, const ArcVectors& v, double beta) {
  MSignReport r;
  r.beta = beta;
  auto x2 = [](double x) { return x * x; };
  for (int n : {2, 3}) {
    r.small_n.push_back(n);
    r.exact_small.push_back(kadell_mean_sum_x2(n, beta));
    r.quadrature_small.push_back(brute_mean_interval(n, beta, x2));
    r.small_agreement = std::max(r.small_agreement, std::abs(r.exact_small.back() - r.quadrature_small.back()));
  }
  // shifts have a 1/n expansion; two Richardson steps
  auto shift = [&](int n) { return kadell_mean_sum_x2(n, beta) - 0.5 * n; };
  const double f1 = shift(1000), f2 = shift(2000), f4 = shift(4000);
  const double r12 = 2 * f2 - f1, r24 = 2 * f4 - f2;
  r.limit = (4 * r24 - r12) / 3;

  if (B.N < 2) throw DomainError("resolve_msign", "need truncation N >= 2");
  ChebSeries u;  // x^2 = 1/2 + T_2 / 2
  u.c0 = 0.5;
  u.coeffs.assign(B.N, 0.0);
  u.coeffs[1] = 0.5;
  for (MVariant m : {MVariant::Intro, MVariant::LemmaMinusG0, MVariant::ProofPlusG0, MVariant::IntervalDisplay}) {
    const auto p = clt_params(u, B, v, beta, m);
    r.candidates.push_back({m, p.mean_shift, std::abs(p.mean_shift - r.limit)});
  }
  auto sorted = r.candidates;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.deviation < b.deviation; });
  r.selected = sorted[0].variant;
  r.selection_margin = sorted[1].deviation - sorted[0].deviation;
  return r;
}

void msign_monte_carlo(MSignReport& r, const GasParams& p0, int chains) {
  GasParams p = p0;
  p.beta = r.beta;
  p.s = 0;
  p.k_stat = std::max(p.k_stat, 2);
  const GasModel I = GasModel::interval(2);
  const auto runs = mcmc_chains(I, p, chains);
  std::vector<double> m;
  for (const auto& c : runs) m.push_back(0.5 * c.stat("X2").mean);
  double mean = 0;
  for (double x : m) mean += x;
  mean /= m.size();
  double q = 0;
  for (double x : m) q += (x - mean) * (x - mean);
  r.has_mc = true;
  r.mc_n = p.n;
  r.mc_shift = mean;
  r.mc_se = std::sqrt(q / (m.size() - 1) / m.size());
  r.mc_exact = kadell_mean_sum_x2(p.n, r.beta) - 0.5 * p.n;
}

}  // namespace arcgas
