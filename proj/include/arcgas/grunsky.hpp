#pragma once

#include <Eigen/Dense>
#include <json.hpp>

#include "arcgas/equilibrium.hpp"

namespace arcgas {

// log|(z_e(s) - z_e(t)) / (s - t)| = -2 sum_{k,l>=0} a_kl T_k(s) T_l(t)
struct GrunskyMatrix {
  int N = 0;
  int quad_M = 0;
  Eigen::MatrixXd a_full;  // (N+1) x (N+1), index 0 included
  Eigen::MatrixXd a;       // k, l = 1..N
  Eigen::MatrixXd b;       // sqrt(kl) a_kl
  double a00 = 0;
  double symmetry_defect = 0;
  double decay_A = 0, decay_p = 0;  // |b_kk| ~ A k^{-p}

  // leading n x n block of B (n <= N)
  GrunskyMatrix truncated(int n) const;
  nlohmann::json to_json() const;
  static GrunskyMatrix from_json(const nlohmann::json& j);
};

GrunskyMatrix grunsky_coeffs(const EquilibriumData& eq, int N);

struct Spectrum {
  double lambda_min = 0;
  double lambda_max = 0;
  double kappa = 0;
};
Spectrum min_eigenvalue(const GrunskyMatrix& B);

struct LogDet {
  double logdet = 0;
  double truncation_error = 0;
};
LogDet fredholm_logdet(const GrunskyMatrix& B);

struct PommerenkeSolution {
  ScaledVector h;
  double s = 1;
  double beta = 2;
  double residual = 0;
};

// (I + sB) h = -g / beta
PommerenkeSolution solve_interp(const GrunskyMatrix& B, const ScaledVector& g, double s, double beta);

// u^t (I + sB)^{-1} v
double quad_form(const GrunskyMatrix& B, const ScaledVector& u, const ScaledVector& v, double s = 1.0);

// max |(B f - m)_k| over k <= N/2
double bf_consistency(const GrunskyMatrix& B, const ScaledVector& f, const ScaledVector& m);

// pointwise defect of G(w) = -beta s sum k a_kl h_k cos(l w) + beta H~(w) on [0, pi]
double pommerenke_residual(const PommerenkeSolution& sol, const ScaledVector& g, const GrunskyMatrix& B,
                           int grid = 512);

}  // namespace arcgas
