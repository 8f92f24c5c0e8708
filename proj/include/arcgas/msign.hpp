#pragma once

#include <json.hpp>
#include <vector>

#include "arcgas/energies.hpp"
#include "arcgas/gas.hpp"

namespace arcgas {

// E[sum x_mu^2] for the interval gas at any n, beta (Aomoto/Kadell moments of the Selberg density)
double kadell_mean_sum_x2(int n, double beta);

struct MSignCandidate {
  MVariant variant;
  double predicted = 0;  // O(1) mean shift of sum x^2 - n/2
  double deviation = 0;  // |predicted - limit|
};

struct MSignReport {
  double beta = 1;
  std::vector<int> small_n;
  std::vector<double> exact_small, quadrature_small;
  double small_agreement = 0;  // max |exact - quadrature|
  double limit = 0;            // lim_n E[sum x^2] - n/2, Richardson on the exact means
  std::vector<MSignCandidate> candidates;
  MVariant selected = MVariant::Intro;
  double selection_margin = 0;  // second-best deviation minus best

  bool has_mc = false;
  int mc_n = 0;
  double mc_shift = 0, mc_se = 0;
  double mc_exact = 0;  // exact finite-n shift at mc_n

  nlohmann::json to_json() const;
};

// B, v: the interval analysis (all zero) at any truncation
MSignReport resolve_msign(const GrunskyMatrix& B, const ArcVectors& v, double beta = 1.0);

// adds the n-particle MC mean shift of sum x^2 - n/2 = X_2 / 2
void msign_monte_carlo(MSignReport& r, const GasParams& p, int chains);

}  // namespace arcgas
