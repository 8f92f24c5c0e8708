#include "arcgas/grunsky.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "arcgas/errors.hpp"
#include "arcgas/fourier.hpp"

namespace arcgas {

namespace {

Eigen::VectorXd to_eigen(const ScaledVector& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.entries.data(), v.size());
}

void check_dims(const GrunskyMatrix& B, const ScaledVector& v) {
  if (v.size() != B.N) throw DomainError("grunsky", "vector length does not match truncation order");
}

Eigen::MatrixXd shifted(const GrunskyMatrix& B, double s) {
  return Eigen::MatrixXd::Identity(B.N, B.N) + s * B.b;
}

void fill_derived(GrunskyMatrix& g) {
  const int N = g.N;
  g.a = g.a_full.block(1, 1, N, N);
  g.b.resize(N, N);
  for (int k = 1; k <= N; ++k)
    for (int l = 1; l <= N; ++l) g.b(k - 1, l - 1) = std::sqrt(double(k) * l) * g.a(k - 1, l - 1);
  g.a00 = g.a_full(0, 0);
  g.symmetry_defect = (g.a - g.a.transpose()).cwiseAbs().maxCoeff();

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int k = std::max(2, N / 4); k <= N; ++k) {
    const double v = std::abs(g.b(k - 1, k - 1));
    if (v < 1e-15) continue;
    const double x = std::log(double(k)), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt >= 2) {
    const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    g.decay_p = -slope;
    g.decay_A = std::exp((sy - slope * sx) / cnt);
  } else {
    g.decay_p = 0;
    g.decay_A = 0;
  }
}

double logdet_spd(const Eigen::MatrixXd& A) {
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() == Eigen::Success) {
    double s = 0.0;
    for (int i = 0; i < A.rows(); ++i) s += 2.0 * std::log(llt.matrixL()(i, i));
    return s;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0) throw ConditioningError("fredholm_logdet", "I + B is not positive definite");
  return es.eigenvalues().array().log().sum();
}

}  // namespace

GrunskyMatrix grunsky_coeffs(const EquilibriumData& eq, int N) {
  const int M = eq.M;
  if (M < 4 * N) throw DomainError("grunsky_coeffs", "quadrature size must be at least 4N");
  Eigen::MatrixXd K(M, M);
  for (int i = 0; i < M; ++i) {
    K(i, i) = eq.nodes[i].log_abs_z_prime;
    for (int j = i + 1; j < M; ++j) K(i, j) = K(j, i) = eq.emap.kernel(eq.nodes[i], eq.nodes[j]);
  }
  if (!K.allFinite()) throw ResolutionError("grunsky_coeffs", "kernel evaluation produced non-finite values");
  Eigen::MatrixXd C(M, N + 1);
  for (int j = 0; j < M; ++j)
    for (int k = 0; k <= N; ++k) C(j, k) = std::cos(k * eq.nodes[j].theta);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(N + 1, 2.0);
  w(0) = 1.0;
  GrunskyMatrix g;
  g.N = N;
  g.quad_M = M;
  g.a_full = -(1.0 / (2.0 * M * double(M))) * w.asDiagonal() * (C.transpose() * K * C) * w.asDiagonal();
  fill_derived(g);
  return g;
}

GrunskyMatrix GrunskyMatrix::truncated(int n) const {
  if (n > N) throw DomainError("grunsky", "cannot enlarge a truncated operator");
  GrunskyMatrix g;
  g.N = n;
  g.quad_M = quad_M;
  g.a_full = a_full.topLeftCorner(n + 1, n + 1);
  fill_derived(g);
  return g;
}

nlohmann::json GrunskyMatrix::to_json() const {
  nlohmann::json j;
  j["N"] = N;
  j["quad_M"] = quad_M;
  std::vector<double> flat(a_full.size());
  for (int r = 0; r <= N; ++r)
    for (int c = 0; c <= N; ++c) flat[r * (N + 1) + c] = a_full(r, c);
  j["a_full"] = flat;
  return j;
}

GrunskyMatrix GrunskyMatrix::from_json(const nlohmann::json& j) {
  GrunskyMatrix g;
  g.N = j.at("N").get<int>();
  g.quad_M = j.at("quad_M").get<int>();
  auto flat = j.at("a_full").get<std::vector<double>>();
  if (static_cast<int>(flat.size()) != (g.N + 1) * (g.N + 1))
    throw DomainError("grunsky", "cached matrix has wrong size");
  g.a_full.resize(g.N + 1, g.N + 1);
  for (int r = 0; r <= g.N; ++r)
    for (int c = 0; c <= g.N; ++c) g.a_full(r, c) = flat[r * (g.N + 1) + c];
  fill_derived(g);
  return g;
}

Spectrum min_eigenvalue(const GrunskyMatrix& B) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (B.b + B.b.transpose()), Eigen::EigenvaluesOnly);
  Spectrum s;
  s.lambda_min = es.eigenvalues().minCoeff();
  s.lambda_max = es.eigenvalues().maxCoeff();
  s.kappa = std::max(0.0, -s.lambda_min);
  return s;
}

LogDet fredholm_logdet(const GrunskyMatrix& B) {
  LogDet r;
  if (B.N == 0) return r;
  auto sp = min_eigenvalue(B);
  if (sp.lambda_min <= -1.0) throw ConditioningError("fredholm_logdet", "I + B is singular (lambda_min <= -1)");
  r.logdet = logdet_spd(shifted(B, 1.0));
  const int half = B.N / 2;
  double drift = 0.0;
  if (half >= 1) drift = std::abs(r.logdet - logdet_spd(shifted(B.truncated(half), 1.0)));
  // geometric/power tail beyond N from the diagonal fit
  double tail = 0.0;
  if (B.decay_A > 0 && B.decay_p > 1.0)
    tail = B.decay_A * std::pow(double(B.N), 1.0 - B.decay_p) / (B.decay_p - 1.0);
  r.truncation_error = std::max(drift, tail);
  return r;
}

PommerenkeSolution solve_interp(const GrunskyMatrix& B, const ScaledVector& g, double s, double beta) {
  check_dims(B, g);
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("solve_interp", "s must lie in [0, 1]");
  if (!(beta > 0.0)) throw DomainError("solve_interp", "beta must be positive");
  Eigen::MatrixXd A = shifted(B, s);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff(), lmax = es.eigenvalues().maxCoeff();
  if (!(lmin > 0.0) || lmax / lmin > 1e12) throw ConditioningError("solve_interp", "I + sB is ill-conditioned");
  Eigen::VectorXd rhs = -to_eigen(g) / beta;
  Eigen::VectorXd h = A.ldlt().solve(rhs);
  PommerenkeSolution sol;
  sol.s = s;
  sol.beta = beta;
  sol.h.entries.assign(h.data(), h.data() + h.size());
  sol.residual = (A * h - rhs).cwiseAbs().maxCoeff();
  return sol;
}

double quad_form(const GrunskyMatrix& B, const ScaledVector& u, const ScaledVector& v, double s) {
  check_dims(B, u);
  check_dims(B, v);
  if (B.N == 0) return 0.0;
  Eigen::MatrixXd A = shifted(B, s);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
  if (ldlt.info() != Eigen::Success) throw ConditioningError("quad_form", "factorization failed");
  return to_eigen(u).dot(ldlt.solve(to_eigen(v)));
}

double bf_consistency(const GrunskyMatrix& B, const ScaledVector& f, const ScaledVector& m) {
  check_dims(B, f);
  check_dims(B, m);
  Eigen::VectorXd r = B.b * to_eigen(f) - to_eigen(m);
  return r.head(B.N / 2).cwiseAbs().maxCoeff();
}

double pommerenke_residual(const PommerenkeSolution& sol, const ScaledVector& g, const GrunskyMatrix& B, int grid) {
  check_dims(B, g);
  check_dims(B, sol.h);
  const int N = B.N;
  int P = 1;
  while (P < std::max(2 * grid, 4 * N)) P *= 2;
  std::vector<double> hk(N), gk(N);
  for (int k = 1; k <= N; ++k) {
    hk[k - 1] = sol.h.entries[k - 1] / std::sqrt(double(k));
    gk[k - 1] = g.entries[k - 1] / std::sqrt(double(k));
  }
  std::vector<double> H(P);
  for (int j = 0; j < P; ++j) {
    const double th = 2.0 * M_PI * j / P;
    double v = 0.0;
    for (int k = 1; k <= N; ++k) v += hk[k - 1] * std::sin(k * th);
    H[j] = v;
  }
  const auto Ht = fourier::conjugate(H);
  // c_l = sum_k k a_kl h_k
  std::vector<double> cl(N, 0.0);
  for (int l = 1; l <= N; ++l)
    for (int k = 1; k <= N; ++k) cl[l - 1] += k * B.a(k - 1, l - 1) * hk[k - 1];
  double res = 0.0;
  for (int j = 0; j <= P / 2; ++j) {
    const double w = 2.0 * M_PI * j / P;
    double G = 0.0, series = 0.0;
    for (int k = 1; k <= N; ++k) {
      const double c = std::cos(k * w);
      G += gk[k - 1] * c;
      series += cl[k - 1] * c;
    }
    const double rhs = -sol.beta * sol.s * series + sol.beta * Ht[j];
    res = std::max(res, std::abs(G - rhs));
  }
  return res;
}

}  // namespace arcgas
