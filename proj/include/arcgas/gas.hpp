#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arcgas/energies.hpp"
#include "arcgas/grunsky.hpp"

namespace arcgas {

// exact beta = 2 partition function by Arnoldi orthogonalization of z^j in L^2(|dz|)
struct GramResult {
  double logZ = 0;
  double orthogonality_defect = 0;
  bool extended_precision = false;
  int quad_M = 0;
};
GramResult logZ_beta2_gram(const ArcSpec& arc, int n, int quad_M = 0);

// What the sampler needs from the analysis of one arc, truncated at K.
struct GasModel {
  int K = 0;
  std::vector<double> A;   // a_kl, k,l = 1..K, row-major
  std::vector<double> dk;  // Chebyshev coefficients of -log|z_e'|, k = 1..K
  double d0_half = 0;      // constant term of that series
  double log_2cap = 0;
  bool trivial = false;    // interval: A = 0, d = 0
  EquilibriumMap emap;     // pairwise-exact mode only

  static GasModel build(const GrunskyMatrix& B, const EquilibriumData& eq, int K);
  static GasModel interval(int K);
};

enum class GasMode { Grunsky, Pairwise };

struct GasParams {
  int n = 2;
  double beta = 2;
  double s = 1;
  std::uint64_t seed = 1;
  std::uint64_t chain = 0;
  long sweeps = 10000;
  long burn_in = 1000;
  double step = 0;  // 0 picks pi / (2n)
  GasMode mode = GasMode::Grunsky;
  int k_stat = 4;   // X_1..X_kstat recorded
  long checkpoint = 1000;
  bool keep_series = false;

  void validate() const;
};

// theta strictly increasing in (0, pi); X_k = sum_mu cos(k theta_mu)
struct GasState {
  std::vector<double> theta;
  std::vector<double> x;       // cos theta
  std::vector<double> cosk;    // n x kmax, cos(k theta_mu), k = 1..kmax
  std::vector<double> X;       // k = 1..kmax
  std::vector<double> y;       // A X over k <= K
  std::vector<double> z_re, z_im, L;  // pairwise mode: z_e and log|z_e'| per particle
  int kmax = 0;
};

struct LinearStat {
  std::string name;
  std::vector<double> coeffs;  // weights of X_1, X_2, ...
};

struct StatSummary {
  std::string name;
  double mean = 0;
  double variance = 0;
  double se_mean = 0;
  double ess = 0;
};

struct ChainSummary {
  GasParams params;
  std::vector<StatSummary> stats;  // X_k, then "XAX", "dX", "Bprime", then requested
  double acceptance = 0;
  double final_step = 0;
  double min_ess = 0;
  double cache_drift = 0;          // max over checkpoints
  int batches = 32;
  bool adaptation_warning = false;
  std::vector<std::string> names;
  std::vector<std::vector<double>> series;  // per statistic, when keep_series

  const StatSummary& stat(const std::string& name) const;
  std::string to_csv() const;
  std::string series_csv() const;
  nlohmann::json to_json() const;
};

GasState initial_state(const GasModel& model, const GasParams& p);
GasState make_state(const GasModel& model, const GasParams& p, const std::vector<double>& theta);
// recompute the cached X_k (and A X) from theta; returns the largest deviation found
double refresh_cache(const GasModel& model, const GasParams& p, GasState& st);

// log density in theta coordinates (up to the normalization), recomputed from scratch
double log_target(const GasModel& model, const GasParams& p, const std::vector<double>& theta);

// incremental log density change of moving particle mu to theta_new;
// -inf when the ordering would break
double move_delta(const GasModel& model, const GasParams& p, const GasState& st, int mu, double theta_new);

// density of the reflected uniform proposal at y from x
double proposal_density(double x, double y, double step);

// |log[pi(x) q(x,y) a(x,y)] - log[pi(y) q(y,x) a(y,x)]| with pi recomputed and a from move_delta
double detailed_balance_defect(const GasModel& model, const GasParams& p, const GasState& st, int mu,
                               double theta_new, double step);

ChainSummary mcmc_run(const GasModel& model, const GasParams& p, const std::vector<LinearStat>& requests = {});

// independent chains (seed, chain = 0..count-1), merged in chain order
std::vector<ChainSummary> mcmc_chains(const GasModel& model, const GasParams& p, int count,
                                      const std::vector<LinearStat>& requests = {});

struct CltEstimate {
  double mean = 0, mean_se = 0;
  double variance = 0, variance_se = 0;
  double predicted_mean = 0, predicted_variance = 0;
  double min_ess = 0;
  int chains = 0;
  bool statistics_warning = false;
  nlohmann::json to_json() const;
};

// sum u(z_mu) - n int u dnu_e = sum_k u_k X_k across independent chains
CltEstimate linear_statistic_clt(const GasModel& model, const GasParams& p, const ChebSeries& u, int chains,
                                 const CltParams& prediction);

struct ThermoNode {
  double s = 0, weight = 0;
  double bprime = 0, se = 0;
  double acceptance = 0;
};

struct ThermoResult {
  double estimate = 0;
  double se = 0;
  std::vector<ThermoNode> nodes;
  std::string csv() const;
  nlohmann::json to_json() const;
};

// log Z_n(gamma) - log Z_n(I) = int_0^1 B'(s) ds by Gauss-Legendre in s
ThermoResult thermo_log_ratio(const GasModel& model, const GasParams& p, int s_nodes = 8);

}  // namespace arcgas
